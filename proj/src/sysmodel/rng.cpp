#include "rissec/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rissec {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), state_(mix(seed + kGolden) ^ mix(mix(stream) + 0x2545F4914F6CDD1DULL)) {}

std::uint64_t RngStream::next_u64() {
  state_ += kGolden;
  return mix(state_);
}

double RngStream::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::complex<double> RngStream::complex_normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1)) * std::numbers::sqrt2 * 0.5;
  const double t = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

std::size_t RngStream::poisson(double mean) {
  std::size_t total = 0;
  double remaining = mean;
  while (remaining > 0) {
    const double m = std::min(remaining, 500.0);
    remaining -= m;
    const double u = uniform();
    double p = std::exp(-m);
    double cdf = p;
    std::size_t k = 0;
    while (u > cdf) {
      ++k;
      p *= m / static_cast<double>(k);
      cdf += p;
      if (k > m && p < 1e-17 * cdf) break;
    }
    total += k;
  }
  return total;
}

}  // namespace rissec
