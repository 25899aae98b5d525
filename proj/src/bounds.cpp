#include "treeperim/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace treeperim {
namespace {

constexpr double kGuard = 1e-9;

Count ceil_guarded(double x) { return static_cast<Count>(std::ceil(x - kGuard)); }
Count floor_guarded(double x) {
  return static_cast<Count>(std::floor(x + kGuard));
}

double log_base(double base, double x) { return std::log(x) / std::log(base); }

void require_qd(int q, int d) {
  if (q < 2) throw std::invalid_argument("bounds: q must be >= 2");
  if (d < 1) throw std::invalid_argument("bounds: d must be >= 1");
}

BoundReport make_report(int q, int d, const char* source, double lo, double hi) {
  BoundReport r;
  r.q = q;
  r.d = d;
  r.source = source;
  r.lower_real = lo;
  r.upper_real = hi;
  r.lower_int = ceil_guarded(lo);
  r.upper_int = floor_guarded(hi);
  return r;
}

}  // namespace

Count floor_log_int(Count base, Count x) {
  if (base < 2 || x < 1) throw std::invalid_argument("floor_log_int");
  Count k = 0;
  Count p = 1;
  while (p <= x / base) {
    p *= base;
    ++k;
  }
  return k;
}

Count ceil_log_int(Count base, Count x) {
  if (base < 2 || x < 1) throw std::invalid_argument("ceil_log_int");
  Count k = 0;
  Count p = 1;
  while (p < x) {
    if (p > std::numeric_limits<Count>::max() / base)
      throw std::overflow_error("ceil_log_int");
    p *= base;
    ++k;
  }
  return k;
}

BoundReport prior_bound_ratio(int q, int d) {
  require_qd(q, d);
  const double denom = q + 6 + 2 * std::log2(static_cast<double>(d));
  const double lo = (d * std::log2(static_cast<double>(q)) - denom) / denom;
  return make_report(q, d, "lb-ratio", lo, static_cast<double>(d));
}

BoundReport prior_bound_sqrt(int q, int d, double c) {
  require_qd(q, d);
  const double lo = q >= 3 ? c * d / std::sqrt(static_cast<double>(q))
                           : c * static_cast<double>(d);
  return make_report(q, d, "lb-sqrtq", lo, static_cast<double>(d));
}

BoundReport prior_bound_linear(int q, int d) {
  require_qd(q, d);
  return make_report(q, d, "lb-frac340", 3.0 / 40.0 * (d - 2),
                     static_cast<double>(d));
}

std::vector<BoundReport> prior_bounds(int q, int d, std::optional<double> c) {
  if (!c)
    throw std::invalid_argument(
        "prior_bounds: the scaled-sqrt bound needs its constant c");
  return {prior_bound_ratio(q, d), prior_bound_sqrt(q, d, *c),
          prior_bound_linear(q, d)};
}

BoundReport peak_bounds(int q, int d) {
  require_qd(q, d);
  BoundReport r;
  r.q = q;
  r.d = d;
  r.source = "peak";
  if (q >= 5) {
    r.lower_real = r.upper_real = static_cast<double>(d);
    r.lower_int = r.upper_int = d;
    return r;
  }
  if (q >= 3) {
    const double lq = static_cast<double>(q);
    r.lower_real = d - log_base(lq, d) - (log_base(lq, 2.0) + 1.0);
    r.lower_int = ceil_guarded(r.lower_real);
    const Count up = d - floor_log_int(q, d) + 2;
    r.upper_real = static_cast<double>(up);
    r.upper_int = up;
    return r;
  }
  // q == 2
  r.lower_real =
      (d - std::log2(static_cast<double>(d)) - 3.0 - std::log2(3.0)) / 2.0;
  const Count a = d - ceil_log_int(2, 3LL * d);
  r.lower_int = a >= 0 ? a / 2 : -((-a + 1) / 2);
  const Count up = (d + 1) / 2;
  r.upper_real = static_cast<double>(up);
  r.upper_int = up;
  return r;
}

Count pathwidth_formula(int q, int d) {
  if (q < 2) throw std::invalid_argument("pathwidth_formula: q must be >= 2");
  if (d < 0) throw std::invalid_argument("pathwidth_formula: d must be >= 0");
  if (q >= 3) return d;
  return (d + 1) / 2;
}

}  // namespace treeperim
