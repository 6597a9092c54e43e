#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace turnband {

/// SplitMix64 (Steele, Lea & Flood): a 64-bit state advanced by the golden
/// gamma and finalized by a fixed mixer. Output is identical on every
/// platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next();
  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform();

 private:
  std::uint64_t state_;
};

std::uint64_t mix64(std::uint64_t z);

/// Key of the independent sub-stream `stream` of `seed`.
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream);

/// Standard normals by Marsaglia's polar method over a SplitMix64 stream.
/// Both variates of each accepted pair are used, first u then v.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t stream) : gen_(stream_key(seed, stream)) {}

  double next();
  double uniform() { return gen_.uniform(); }

 private:
  SplitMix64 gen_;
  double spare_ = 0;
  bool has_spare_ = false;
};

/// The first n draws of sub-stream `stream` of `seed`.
Eigen::VectorXd gaussian_draws(std::uint64_t seed, std::uint64_t stream, Eigen::Index n);

/// Sub-stream indices reserved for point sampling; field realizations use
/// streams 0, 1, 2, ... directly.
inline constexpr std::uint64_t kPointStreamBase = 0x5050'0000'0000'0000ULL;

}  // namespace turnband
