#include "fano/search.hpp"

#include <numeric>
#include <stdexcept>

#include "fano/bound_expr.hpp"
#include "fano/bounds.hpp"

namespace fano {

ExactInt single_level_degree(long n, long r, long a) {
  if (r < 0 || r > n - 1 || a < 0 || a > n - r) throw std::invalid_argument("(r, a) outside the Fano range");
  return degree(TowerSpec{n - r, {Level{r, a}}});
}

BestR best_r_over(long n, std::span<const long> candidates) {
  if (n < 2) throw std::invalid_argument("best_r needs n >= 2");
  if (candidates.empty()) throw std::invalid_argument("no candidates");
  BestR best{-1, 0};
  for (long r : candidates) {
    ExactInt d = single_level_degree(n, r, n - r);
    if (best.r < 0 || d > best.degree || (d == best.degree && r < best.r)) best = BestR{r, std::move(d)};
  }
  return best;
}

BestR best_r(long n) {
  if (n < 2) throw std::invalid_argument("best_r needs n >= 2");
  std::vector<long> rs(static_cast<std::size_t>(n));
  std::iota(rs.begin(), rs.end(), 0L);
  return best_r_over(n, rs);
}

BestRA best_ra(long n) {
  if (n < 2) throw std::invalid_argument("best_ra needs n >= 2");
  BestRA best{-1, -1, 0};
  for (long r = 0; r <= n - 1; ++r) {
    for (long a = 0; a <= n - r; ++a) {
      ExactInt d = single_level_degree(n, r, a);
      if (best.r < 0 || d > best.degree) best = BestRA{r, a, std::move(d)};
    }
  }
  return best;
}

std::vector<SearchRow> ratio_table(std::span<const long> ns, long precision_bits, long precision_cap) {
  std::vector<SearchRow> rows;
  rows.reserve(ns.size());
  const BoundExpr nv = BoundExpr::var("n");
  for (long n : ns) {
    if (n < 3) throw std::invalid_argument("ratio_table needs n >= 3");
    const BestR best = best_r(n);
    SearchRow row;
    row.n = n;
    row.r_star = best.r;
    row.a_star = n - best.r;
    row.degree = best.degree;
    const Assignment a{{"n", ExactInt(n)}};
    row.delta = nth_root_interval(best.degree, static_cast<unsigned long>(n), precision_bits);
    row.ratio = row.delta * interval_eval(log(nv) / (nv * nv), a, precision_bits);
    row.r_offset = interval_eval(BoundExpr(ExactInt(best.r)) - nv / log(nv), a, precision_bits);
    row.ratio_bound = decide_ge(best.degree, prop1_bound(), a, precision_cap);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fano
