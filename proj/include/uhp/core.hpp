#pragma once

#include <complex>
#include <cstdint>
#include <cstdio>
#include <cmath>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace uhp {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx imag_unit{0.0, 1.0};

inline bool is_finite(cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * pi);
  if (a <= -pi) a += 2.0 * pi;
  if (a > pi) a -= 2.0 * pi;
  return a;
}

inline bool in_disk(cplx z) { return std::abs(z) < 1.0; }
inline bool in_halfplane(cplx w) { return w.imag() > 0.0; }

enum class Domain { disk, halfplane };

inline const char* domain_name(Domain d) {
  return d == Domain::disk ? "disk" : "halfplane";
}

// Pairwise (cascade) summation: fixed association order, so results are
// reproducible and rounding error grows like log n instead of n.
template <typename T>
T pairwise_sum(std::span<const T> xs) {
  const std::size_t n = xs.size();
  if (n == 0) return T{};
  if (n <= 8) {
    T acc = xs[0];
    for (std::size_t i = 1; i < n; ++i) acc += xs[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& xs) {
  return pairwise_sum(std::span<const T>(xs));
}

// Fixed-format float rendering used by every serialized report.
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12e", x);
  return buf;
}

inline std::string format_cplx(cplx z) {
  if (z.imag() == 0.0) return format_real(z.real());
  std::string s = format_real(z.real());
  s += (z.imag() < 0.0 || std::isnan(z.imag())) ? "-" : "+";
  s += format_real(std::abs(z.imag()));
  s += "i";
  return s;
}

// Deterministic uniform deviates.  mt19937_64 output is pinned by the
// standard; the distribution classes are not, so we map raw words ourselves.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  cplx complex_in_box(double re_lo, double re_hi, double im_lo, double im_hi) {
    const double re = uniform(re_lo, re_hi);
    const double im = uniform(im_lo, im_hi);
    return {re, im};
  }

  // Uniform point in the open disk of radius r (rejection-free via sqrt).
  cplx in_disk(double r = 1.0) {
    const double rad = r * std::sqrt(uniform01());
    const double ang = uniform(0.0, 2.0 * pi);
    return std::polar(rad, ang);
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace uhp
