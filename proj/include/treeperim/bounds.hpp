#ifndef TREEPERIM_BOUNDS_HPP
#define TREEPERIM_BOUNDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "treeperim/tree.hpp"

namespace treeperim {

/// Evaluated bound with real values and integer corollaries. Integers come
/// from ceil(lower - 1e-9) and floor(upper + 1e-9) unless the formula is
/// integer-valued to begin with, in which case it is computed in integer
/// arithmetic.
struct BoundReport {
  int q = 0;
  int d = 0;
  std::string source;
  double lower_real = 0.0;
  double upper_real = 0.0;
  Count lower_int = 0;
  Count upper_int = 0;
};

/// Largest k with base^k <= x (x >= 1).
Count floor_log_int(Count base, Count x);
/// Smallest k with base^k >= x (x >= 1).
Count ceil_log_int(Count base, Count x);

/// The three previously published lower bounds on the peak, as reals, with
/// the trivial depth upper bound alongside. The scaled-sqrt bound needs its
/// constant c supplied.
BoundReport prior_bound_ratio(int q, int d);
BoundReport prior_bound_sqrt(int q, int d, double c);
BoundReport prior_bound_linear(int q, int d);
std::vector<BoundReport> prior_bounds(int q, int d, std::optional<double> c);

/// Two-sided bounds on the isoperimetric peak:
///   q >= 5:      [d, d]
///   q in {3,4}:  [d - log_q(d) - (log_q(2)+1),  d - floor(log_q d) + 2]
///   q = 2:       [floor((d - ceil(log2 3d))/2),  ceil(d/2)]
/// For q = 2 the integer lower bound is the exact floor formula; lower_real
/// carries the weaker closed form (d - log2 d - 3 - log2 3)/2.
BoundReport peak_bounds(int q, int d);

/// d for q >= 3, ceil(d/2) for q = 2.
Count pathwidth_formula(int q, int d);

}  // namespace treeperim

#endif
