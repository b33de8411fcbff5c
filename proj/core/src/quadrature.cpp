#include "scatter/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "scatter/error.hpp"

namespace scatter::specfun {

namespace {

// Kronrod abscissae; odd indices are the embedded 7-point Gauss nodes, the
// last entry is the centre.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment gauss_kronrod(const F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double pair = f(c - dx) + f(c + dx);
    kron += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  kron *= h;
  gauss *= h;
  return {a, b, kron, std::abs(kron - gauss)};
}

template <typename F>
QuadratureResult adaptive(const F& f, double a, double b, const QuadratureSpec& spec) {
  std::priority_queue<Segment> heap;
  heap.push(gauss_kronrod(f, a, b));
  double total = heap.top().value;
  double error = heap.top().error;
  int splits = 0;
  while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total)) &&
         splits < spec.max_subdivisions) {
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(worst);
      break;
    }
    Segment left = gauss_kronrod(f, worst.a, mid);
    Segment right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  // Re-sum to remove drift from the incremental updates.
  QuadratureResult out;
  while (!heap.empty()) {
    out.value += heap.top().value;
    out.abs_error += heap.top().error;
    heap.pop();
  }
  out.subdivisions = splits;
  out.converged = std::isfinite(out.value) &&
                  out.abs_error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
  return out;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0)) detail::fail_domain("QuadratureSpec", "abs_tol must be > 0");
  if (!(rel_tol > 0.0)) detail::fail_domain("QuadratureSpec", "rel_tol must be > 0");
  if (max_subdivisions < 1) detail::fail_domain("QuadratureSpec", "max_subdivisions must be >= 1");
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
  spec.validate();
  if (std::isnan(a) || std::isnan(b)) detail::fail_domain("integrate", "NaN limit");
  if (a == b) return {0.0, 0.0, 0, true};
  if (a > b) {
    QuadratureResult r = integrate(f, b, a, spec);
    r.value = -r.value;
    return r;
  }
  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (lo_inf && hi_inf) {
    QuadratureResult left = integrate(f, a, 0.0, spec);
    QuadratureResult right = integrate(f, 0.0, b, spec);
    return {left.value + right.value, left.abs_error + right.abs_error,
            left.subdivisions + right.subdivisions, left.converged && right.converged};
  }
  if (hi_inf) {
    auto g = [&](double t) {
      const double u = 1.0 - t;
      return f(a + t / u) / (u * u);
    };
    return adaptive(g, 0.0, 1.0, spec);
  }
  if (lo_inf) {
    auto g = [&](double t) { return f(b - (1.0 - t) / t) / (t * t); };
    return adaptive(g, 0.0, 1.0, spec);
  }
  return adaptive(f, a, b, spec);
}

}  // namespace scatter::specfun
