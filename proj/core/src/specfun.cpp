#include "scatter/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "scatter/error.hpp"

namespace scatter::specfun {

namespace {

namespace bm = boost::math;
using Policy = bm::policies::policy<bm::policies::overflow_error<bm::policies::errno_on_error>,
                                    bm::policies::underflow_error<bm::policies::ignore_error>>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfPi = 0.5 * std::numbers::pi;

std::string describe(const char* name, double a, double b, double x) {
  std::ostringstream os;
  os.precision(17);
  os << name << "(a=" << a << ", b=" << b << ", x=" << x << ")";
  return os.str();
}

void require_finite(const char* where, double v) {
  if (!std::isfinite(v)) detail::fail_domain(where, "argument must be finite");
}

// log K_nu(x) from the large-argument Hankel expansion.
double log_bessel_k_large(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return 0.5 * std::log(std::numbers::pi / (2.0 * x)) - x + std::log(sum);
}

// Asymptotic series x^a U(a,b,x) ~ sum (a)_k (a-b+1)_k / k! (-1/x)^k. Returns
// false when the series does not reach full precision before diverging.
bool hyper_u_asymptotic(double a, double b, double x, double& log_value) {
  const double c = a - b + 1.0;
  const bool terminates = c <= 0.0 && c == std::floor(c);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 500; ++k) {
    const double next = -term * (a + k) * (c + k) / ((k + 1.0) * x);
    if (next == 0.0) {
      if (sum <= 0.0) return false;
      log_value = std::log(sum) - a * std::log(x);
      return true;
    }
    if (!terminates && std::abs(next) > std::abs(term)) return false;
    term = next;
    sum += term;
    if (!terminates && std::abs(term) < 1e-17 * std::abs(sum)) {
      if (sum <= 0.0) return false;
      log_value = std::log(sum) - a * std::log(x);
      return true;
    }
  }
  return false;
}

// Laplace integral U = x^-a / Gamma(a) * int_0^inf e^-u u^(a-1) (1+u/x)^(b-a-1) du,
// evaluated by the exp-sinh rule u = exp(pi/2 sinh s) with step halving.
double hyper_u_exp_sinh(double a, double b, double x) {
  const double c = b - a - 1.0;
  const double log_x = std::log(x);
  auto log_term = [&](double s) {
    const double log_u = kHalfPi * std::sinh(s);
    if (log_u > 700.0) return -kInf;
    const double u = std::exp(log_u);
    double v = -u + a * log_u + std::log(kHalfPi * std::cosh(s));
    if (c != 0.0) {
      const double r = log_u - log_x;
      v += c * (r > 30.0 ? r + std::log1p(std::exp(-r)) : std::log1p(std::exp(r)));
    }
    return v;
  };

  constexpr double kDrop = 46.0;  // e^-46 ~ 1e-20 relative to the peak
  constexpr double kLimit = 12.0;
  double ref = -kInf;
  double s_peak = 0.0;
  std::vector<double> first;

  // Level 0: nodes at spacing 1/2, scanned outward from s = 0.
  double h = 0.5;
  auto scan = [&](double start, double step, auto&& visit) {
    for (double s = start; std::abs(s) <= kLimit; s += step) {
      const double l = log_term(s);
      visit(s, l);
      const bool past_peak = step > 0 ? s > s_peak : s < s_peak;
      if (past_peak && l < ref - kDrop) break;
    }
  };
  auto record = [&](double s, double l) {
    first.push_back(l);
    if (l > ref) {
      ref = l;
      s_peak = s;
    }
  };
  scan(0.0, h, record);
  scan(-h, -h, record);
  if (!std::isfinite(ref)) throw NumericError(describe("hyper_u", a, b, x) + ": integrand vanished");

  double sum = 0.0;
  for (double l : first) sum += std::exp(l - ref);
  double integral = h * sum;

  for (int level = 1; level <= 10; ++level) {
    h *= 0.5;
    auto add = [&](double, double l) { sum += std::exp(l - ref); };
    scan(h, 2.0 * h, add);
    scan(-h, -2.0 * h, add);
    const double next = h * sum;
    const double change = std::abs(next - integral);
    integral = next;
    if (level >= 2 && change <= 1e-9 * integral) {
      return -a * log_x - std::lgamma(a) + ref + std::log(integral);
    }
  }
  throw NumericError(describe("hyper_u", a, b, x) + ": quadrature did not converge");
}

}  // namespace

double q_function(double x) {
  require_finite("q_function", x);
  return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double gamma_fn(double x) {
  require_finite("gamma_fn", x);
  if (x <= 0.0) detail::fail_domain("gamma_fn", "x must be > 0");
  return std::tgamma(x);
}

double lower_incomplete_gamma(double a, double x) {
  require_finite("lower_incomplete_gamma", a);
  if (!(a > 0.0)) detail::fail_domain("lower_incomplete_gamma", "a must be > 0");
  if (std::isnan(x) || x < 0.0) detail::fail_domain("lower_incomplete_gamma", "x must be >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return std::tgamma(a);
  return bm::tgamma_lower(a, x, Policy{});
}

double upper_incomplete_gamma(double a, double x) {
  require_finite("upper_incomplete_gamma", a);
  if (a < 0.0) detail::fail_domain("upper_incomplete_gamma", "a must be >= 0");
  if (std::isnan(x) || x < 0.0) detail::fail_domain("upper_incomplete_gamma", "x must be >= 0");
  if (std::isinf(x)) return 0.0;
  if (a == 0.0) {
    if (x == 0.0) detail::fail_domain("upper_incomplete_gamma", "a = 0 requires x > 0 (divergent)");
    return bm::expint(1, x, Policy{});
  }
  if (x == 0.0) return std::tgamma(a);
  return bm::tgamma(a, x, Policy{});
}

double regularized_lower_gamma(double a, double x) {
  require_finite("regularized_lower_gamma", a);
  if (!(a > 0.0)) detail::fail_domain("regularized_lower_gamma", "a must be > 0");
  if (std::isnan(x) || x < 0.0) detail::fail_domain("regularized_lower_gamma", "x must be >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return bm::gamma_p(a, x, Policy{});
}

double bessel_k(double nu, double x) {
  require_finite("bessel_k", nu);
  if (std::isnan(x) || x <= 0.0) detail::fail_domain("bessel_k", "x must be > 0");
  if (std::isinf(x)) return 0.0;
  return bm::cyl_bessel_k(std::abs(nu), x, Policy{});
}

double log_bessel_k(double nu, double x) {
  const double k = bessel_k(nu, x);
  if (k > std::numeric_limits<double>::min() && std::isfinite(k)) return std::log(k);
  nu = std::abs(nu);
  if (k == 0.0 || k < std::numeric_limits<double>::min()) return log_bessel_k_large(nu, x);
  // Overflow only happens for small x and large order, where the leading
  // small-argument term is accurate.
  return std::lgamma(nu) - std::log(2.0) + nu * std::log(2.0 / x);
}

double log_hyper_u(double a, double b, double x) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(x) || a <= 0.0 || x <= 0.0) {
    detail::fail_domain(describe("hyper_u", a, b, x),
                        "supported region is a > 0, x > 0, b finite");
  }
  if (b < 1.0) {
    // Kummer transformation U(a,b,x) = x^(1-b) U(a-b+1, 2-b, x).
    return (1.0 - b) * std::log(x) + log_hyper_u(a - b + 1.0, 2.0 - b, x);
  }
  const double c = a - b + 1.0;
  const bool terminates = c <= 0.0 && c == std::floor(c);
  double value = 0.0;
  if ((terminates || x >= 30.0) && hyper_u_asymptotic(a, b, x, value)) return value;
  return hyper_u_exp_sinh(a, b, x);
}

double hyper_u(double a, double b, double x) { return std::exp(log_hyper_u(a, b, x)); }

double erfcx(double x) {
  if (std::isnan(x)) return x;
  if (x < 5.0) {
    if (x * x > 700.0) return kInf;
    return std::exp(x * x) * std::erfc(x);
  }
  if (std::isinf(x)) return 0.0;
  // Continued fraction erfcx(x) = 1/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))).
  double tail = x;
  for (int k = 80; k >= 1; --k) tail = x + 0.5 * k / tail;
  return 1.0 / (std::sqrt(std::numbers::pi) * tail);
}

}  // namespace scatter::specfun
