#pragma once

#include <cstdint>
#include <vector>

namespace ff {

/// Exact integer verification of the Dyson-Hunt-Kac permutation identity
///   sum_sigma m*(i_sigma) = sum_{r=1}^n (1/2r) sum_sigma |i_s(1)+...+i_s(r)|
/// with m*(i) = max of the partial sums (the full sum 0 included), over all
/// integer tuples with sum 0 and |i_k| <= i_range.
struct DhkResult {
  bool ok = true;
  std::vector<int> counterexample;  // empty when ok
  long tuples_checked = 0;
};

DhkResult dhk_check(int n, int i_range);

}  // namespace ff
