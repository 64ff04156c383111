#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace rissec {

// Counter-based stream: the state is a pure function of (seed, stream, draws so far),
// so trial t always sees the same numbers no matter which worker runs it.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  // Uniform on the open interval (0, 1).
  double uniform();
  // Circularly-symmetric complex normal with E|z|^2 = 1 (Box-Muller, one pair per call).
  std::complex<double> complex_normal();
  std::size_t poisson(double mean);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t state_;
};

}  // namespace rissec
