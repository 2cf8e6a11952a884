// SPDX-License-Identifier: Apache-2.0
#include "tci/gammafn.hpp"

#include <cmath>
#include <stdexcept>

#include "tci/common.hpp"

namespace tci {

namespace {

constexpr double kEps = 1e-15;
constexpr int kMaxIter = 500;
constexpr double kFpMin = 1e-300;

// series representation, valid for x < a + 1
double gser(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps)
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw NumericError("gammp: series failed to converge");
}

// continued fraction for Q(a, x), valid for x >= a + 1 (modified Lentz)
double gcf(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kFpMin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = b + an / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps)
      return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
  }
  throw NumericError("gammq: continued fraction failed to converge");
}

}  // namespace

double gammp(double a, double x) {
  if (!(a > 0.0) || x < 0.0 || !std::isfinite(a))
    throw NumericError("gammp: domain error");
  if (x == 0.0) return 0.0;
  if (!std::isfinite(x)) return 1.0;
  if (x < a + 1.0) return gser(a, x);
  return 1.0 - gcf(a, x);
}

double gammq(double a, double x) {
  if (!(a > 0.0) || x < 0.0 || !std::isfinite(a))
    throw NumericError("gammq: domain error");
  if (x == 0.0) return 1.0;
  if (!std::isfinite(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gser(a, x);
  return gcf(a, x);
}

double inv_normal_cdf(double p) {
  if (!(p > 0.0) || !(p < 1.0)) throw NumericError("inv_normal_cdf: p outside (0,1)");
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
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // one Halley step against the exact CDF
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * 3.141592653589793) * std::exp(0.5 * x * x);
  x = x - u / (1.0 + 0.5 * x * u);
  return x;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / 1.4142135623730951); }

double log_binormal_pdf(double b, double s, double rho) {
  if (!(std::fabs(rho) < 1.0)) throw NumericError("log_binormal_pdf: |rho| >= 1");
  const double om = 1.0 - rho * rho;
  return -1.8378770664093454836 - 0.5 * std::log(om) -
         (b * b - 2.0 * rho * b * s + s * s) / (2.0 * om);
}

double log_normal_pdf(double x) { return -0.91893853320467274178 - 0.5 * x * x; }

double inv_gammp(double a, double p) {
  if (!(a > 0.0)) throw NumericError("inv_gammp: a <= 0");
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) throw NumericError("inv_gammp: p >= 1");

  // Wilson-Hilferty starting point
  double x;
  {
    const double z = inv_normal_cdf(p);
    const double t = 1.0 - 1.0 / (9.0 * a) + z / (3.0 * std::sqrt(a));
    x = a * t * t * t;
    if (!(x > 0.0) || !std::isfinite(x)) x = a;
  }

  // establish a bracket [lo, hi] with P(lo) < p <= P(hi)
  double lo = 0.0, hi = x;
  while (gammp(a, hi) < p) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw NumericError("inv_gammp: bracket expansion failed");
  }
  if (x <= lo || x >= hi) x = 0.5 * (lo + hi);

  const double lga = std::lgamma(a);
  for (int it = 0; it < 200; ++it) {
    const double f = gammp(a, x) - p;
    if (f > 0.0)
      hi = x;
    else
      lo = x;
    if (std::fabs(f) < 1e-14 * std::max(p, 1e-30) && it > 0) break;
    const double logpdf = (a - 1.0) * std::log(x) - x - lga;
    double step = f / std::exp(logpdf);
    double xn = x - step;
    if (!(xn > lo) || !(xn < hi) || !std::isfinite(xn)) xn = 0.5 * (lo + hi);
    if (std::fabs(xn - x) < 1e-15 * (x + 1e-300)) {
      x = xn;
      break;
    }
    x = xn;
  }
  return x;
}

}  // namespace tci
