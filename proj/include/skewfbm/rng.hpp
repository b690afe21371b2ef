#pragma once

#include <cstdint>
#include <random>

namespace skewfbm {

/// Seeded standard-normal stream.
///
/// Bits come from std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Uniforms use the top 53 bits and normals use the Marsaglia polar
/// method, both implemented here, so the stream is identical across standard
/// libraries (std::normal_distribution is not).
class NormalStream {
 public:
  static constexpr const char* kName = "mt19937_64+polar/v1";

  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace skewfbm
