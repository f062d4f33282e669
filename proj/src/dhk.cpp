#include "ff/dhk.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ff {

DhkResult dhk_check(int n, int i_range) {
  if (n < 2 || n > 7)
    throw std::invalid_argument("dhk_check: need 2 <= n <= 7");
  if (i_range < 1) throw std::invalid_argument("dhk_check: i_range < 1");

  // L = lcm(1..n); both sides are compared after scaling by 2L so the
  // arithmetic stays in integers.
  std::int64_t L = 1;
  for (int r = 2; r <= n; ++r) L = std::lcm(L, static_cast<std::int64_t>(r));

  DhkResult res;
  std::vector<int> tup(n, -i_range);
  while (true) {
    std::int64_t s = std::accumulate(tup.begin(), tup.end(), std::int64_t{0});
    if (s == 0) {
      ++res.tuples_checked;
      // iterate distinct arrangements; repeated entries scale both sides by
      // the same multiplicity, so distinct arrangements decide the identity
      std::vector<int> p = tup;
      std::sort(p.begin(), p.end());
      std::int64_t lhs = 0, rhs = 0;
      do {
        std::int64_t run = 0, mx = 0;  // partial-sum max; full sum 0 included
        for (int r = 0; r < n; ++r) {
          run += p[r];
          if (run > mx) mx = run;
          rhs += (L / (r + 1)) * std::abs(run);
        }
        lhs += mx;
      } while (std::next_permutation(p.begin(), p.end()));
      if (2 * L * lhs != rhs) {
        res.ok = false;
        res.counterexample = tup;
        return res;
      }
    }
    // odometer
    int k = 0;
    while (k < n && tup[k] == i_range) tup[k++] = -i_range;
    if (k == n) break;
    ++tup[k];
  }
  return res;
}

}  // namespace ff
