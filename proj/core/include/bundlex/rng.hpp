#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "bundlex/types.hpp"

namespace bundlex {

// FNV-1a, used to derive per-record substreams from one master seed so the
// sample sequence of a record does not depend on evaluation order.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/* Deterministic sampling helper. The double conversion is fixed here rather
 * than delegated to std::uniform_real_distribution, whose output is
 * implementation-defined; reports must be reproducible byte for byte. */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  Rng(std::uint64_t seed, std::string_view stream) : gen_(seed ^ fnv1a(stream)) {}

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Area-uniform point of the closed disc of the given radius.
  Cx disc(double radius) {
    double r = radius * std::sqrt(uniform01());
    double th = uniform(0.0, 6.283185307179586476925287);
    return Cx(r * std::cos(th), r * std::sin(th));
  }

  Cx rect(double re_lo, double re_hi, double im_lo, double im_hi) {
    return Cx(uniform(re_lo, re_hi), uniform(im_lo, im_hi));
  }

  // Point of the polydisc of radius `radius` in C^n.
  FiberPoint polydisc(int n, double radius) {
    FiberPoint z(static_cast<std::size_t>(n));
    for (auto& c : z) c = disc(radius);
    return z;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace bundlex
