#pragma once

#include <cmath>
#include <cstdint>

namespace roughlab::rng {

// Counter-based generator: (seed, stream, counter) -> uniform 64-bit via
// three rounds of the splitmix64 finalizer. Stateless, so parallel draws
// never depend on evaluation order.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

inline std::uint64_t raw(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  std::uint64_t h = mix64(seed ^ 0xA0761D6478BD642FULL);
  h = mix64(h ^ (stream + 1) * 0xE7037ED1A0B428DBULL);
  h = mix64(h ^ (counter + 1) * 0x9E3779B97F4A7C15ULL);
  return h;
}

// Uniform in the open interval (0, 1): 53-bit mantissa, offset by half an ulp.
inline double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return (static_cast<double>(raw(seed, stream, counter) >> 11) + 0.5) * 0x1.0p-53;
}

// Inverse-CDF standard normal (Acklam's rational approximation refined by
// one Halley step); fixed per release for reproducibility.
inline double inverse_normal_cdf(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1.0 - plow;
  double x;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= phigh) {
    double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // One Halley refinement against erfc.
  double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  x = x - u / (1.0 + x * u / 2.0);
  return x;
}

inline double gaussian(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  return inverse_normal_cdf(uniform(seed, stream, counter));
}

// Stream identifiers per sampler component, so that adding one component
// never shifts the draws of another.
enum Stream : std::uint64_t {
  kBrownian = 0,
  kFbm = 1,
  kJumpCount = 2,
  kJumpTimes = 3,
  kJumpSizes = 4,
  kSmallGaussian = 5,
};

}  // namespace roughlab::rng
