#include "gdet/group_matrix.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "gdet/errors.hpp"

namespace gdet {

bool GroupMatrix::fully_symbolic() const {
  for (const auto& row : entries)
    for (int e : row)
      if (e == kZeroEntry) return false;
  return true;
}

GroupMatrix group_matrix(const FiniteGroup& g, const Subset& s) {
  GroupMatrix m;
  m.order = g.order;
  m.group = &g;
  m.subset = s;
  m.entries.assign(g.order, std::vector<int>(g.order, kZeroEntry));
  for (int i = 0; i < g.order; ++i)
    for (int j = 0; j < g.order; ++j) {
      const int k = g.mul(i, g.inv(j));
      m.entries[i][j] = s.contains(k) ? k : kZeroEntry;
    }
  return m;
}

GroupMatrix subgroup_matrix(const FiniteGroup& g, const Subset& s) {
  if (!is_subgroup_oracle(s))
    fail(ErrorKind::NotASubgroup, "subgroup matrix needs a subgroup");
  const int m = s.size();
  GroupMatrix result;
  result.order = m;
  result.group = &g;
  result.subset = s;
  result.entries.assign(m, std::vector<int>(m));
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      result.entries[p][q] = g.mul(s.members[p], g.inv(s.members[q]));
  return result;
}

namespace {

using Mask = std::uint32_t;

// One minor-expansion layer: extends determinants of rows 0..row-1 over
// column subsets to rows 0..row. Pull model: every target subset gathers
// from its predecessors, so targets are independent and may be computed
// in parallel without changing the result.
void expand_layer(const GroupMatrix& m, int row,
                  const std::unordered_map<Mask, Polynomial>& cur,
                  std::unordered_map<Mask, Polynomial>& next,
                  std::size_t term_budget, std::atomic<std::size_t>& live,
                  int threads) {
  std::vector<Mask> targets;
  {
    std::vector<bool> seen(std::size_t(1) << m.order, false);
    for (const auto& [mask, poly] : cur)
      for (int j = 0; j < m.order; ++j)
        if (m.entry(row, j) != kZeroEntry && !(mask & (Mask(1) << j)) &&
            !seen[mask | (Mask(1) << j)]) {
          seen[mask | (Mask(1) << j)] = true;
          targets.push_back(mask | (Mask(1) << j));
        }
  }
  std::sort(targets.begin(), targets.end());

  const auto compute_target = [&](Mask target) -> Polynomial {
    Polynomial acc;
    for (int j = 0; j < m.order; ++j) {
      if (!(target & (Mask(1) << j))) continue;
      const int var = m.entry(row, j);
      if (var == kZeroEntry) continue;
      const auto it = cur.find(target ^ (Mask(1) << j));
      if (it == cur.end()) continue;
      const int below = std::popcount(target & ((Mask(1) << j) - 1));
      const bool negate = (row + below) % 2 != 0;
      const Monomial xj = Monomial::variable(var);
      for (const auto& [mono, coeff] : it->second.terms())
        acc.add_term(mono.times(xj), negate ? BigInt(-coeff) : coeff);
    }
    return acc;
  };

  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(targets.size())));
  std::vector<std::vector<std::pair<Mask, Polynomial>>> results(workers);
  std::atomic<bool> over_budget{false};

  auto run_chunk = [&](int w) {
    for (std::size_t t = w; t < targets.size(); t += workers) {
      if (over_budget.load(std::memory_order_relaxed)) return;
      Polynomial p = compute_target(targets[t]);
      if (p.is_zero()) continue;
      if (live.fetch_add(p.term_count()) + p.term_count() > term_budget) {
        over_budget.store(true, std::memory_order_relaxed);
        return;
      }
      results[w].emplace_back(targets[t], std::move(p));
    }
  };

  if (workers == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(run_chunk, w);
    for (auto& th : pool) th.join();
  }
  if (over_budget.load())
    fail(ErrorKind::ResourceBudgetExceeded,
         "term budget of " + std::to_string(term_budget) +
             " exceeded during minor expansion");
  for (auto& chunk : results)
    for (auto& [mask, poly] : chunk) next.emplace(mask, std::move(poly));
}

}  // namespace

Polynomial determinant(const GroupMatrix& m, const DetOptions& opts) {
  const int n = m.order;
  if (n > std::min(opts.order_cap, 20))
    fail(ErrorKind::OrderCapExceeded,
         "matrix order " + std::to_string(n) + " above the cap of " +
             std::to_string(std::min(opts.order_cap, 20)));
  if (n > opts.full_symbolic_cap && m.fully_symbolic())
    fail(ErrorKind::OrderCapExceeded,
         "dense symbolic determinant of order " + std::to_string(n) +
             " above the full-symbolic cap of " +
             std::to_string(opts.full_symbolic_cap) +
             " (raise the cap to force it)");

  std::unordered_map<Mask, Polynomial> cur;
  cur.emplace(0, Polynomial::constant(1));
  std::atomic<std::size_t> live{1};
  for (int row = 0; row < n; ++row) {
    std::unordered_map<Mask, Polynomial> next;
    expand_layer(m, row, cur, next, opts.term_budget, live, opts.threads);
    cur = std::move(next);
    std::size_t cur_terms = 0;
    for (const auto& [mask, poly] : cur) cur_terms += poly.term_count();
    live.store(cur_terms);
    if (cur.empty()) return Polynomial();  // all minors vanished
  }
  const auto it = cur.find((Mask(1) << n) - 1);
  return it == cur.end() ? Polynomial() : it->second;
}

Polynomial leibniz_determinant(const GroupMatrix& m) {
  const int n = m.order;
  if (n > 6)
    fail(ErrorKind::OrderCapExceeded,
         "Leibniz oracle is limited to order 6, got " + std::to_string(n));
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Polynomial det;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    std::vector<Monomial::VarExp> pairs;
    bool zero = false;
    for (int i = 0; i < n && !zero; ++i) {
      const int var = m.entry(i, perm[i]);
      if (var == kZeroEntry)
        zero = true;
      else
        pairs.emplace_back(var, 1);
    }
    if (!zero)
      det.add_term(Monomial::from_exponents(std::move(pairs)),
                   inversions % 2 == 0 ? 1 : -1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

Polynomial gen_group_det(const FiniteGroup& g, const Subset& s,
                         const DetOptions& opts) {
  return determinant(group_matrix(g, s), opts);
}

CosetBlockReport coset_block_structure(const FiniteGroup& g, const Subset& s) {
  CosetBlockReport report;
  report.ordering = coset_ordering(s);  // throws NotASubgroup if needed
  report.block_size = s.size();
  report.block_count = g.order / s.size();

  const GroupMatrix full = group_matrix(g, s);
  const GroupMatrix block = subgroup_matrix(g, s);
  const auto& p = report.ordering;
  report.verified = true;
  for (int i = 0; i < g.order && report.verified; ++i) {
    for (int j = 0; j < g.order && report.verified; ++j) {
      const int e = full.entry(p[i], p[j]);
      if (i / report.block_size == j / report.block_size) {
        report.verified =
            e == block.entry(i % report.block_size, j % report.block_size);
      } else {
        report.verified = e == kZeroEntry;
      }
    }
  }
  return report;
}

std::uint64_t fingerprint_at(const FiniteGroup& g, const Subset& s,
                             const std::vector<std::uint64_t>& values,
                             std::uint64_t prime) {
  if (static_cast<int>(values.size()) != g.order)
    fail(ErrorKind::InvalidSpec, "fingerprint point must cover every element");
  const int n = g.order;
  std::vector<std::vector<std::uint64_t>> a(n,
                                            std::vector<std::uint64_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int k = g.mul(i, g.inv(j));
      if (s.contains(k)) a[i][j] = values[k] % prime;
    }

  std::uint64_t det = 1;
  bool negate = false;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (a[row][col] != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      negate = !negate;
    }
    det = mulmod(det, a[col][col], prime);
    const std::uint64_t inv_pivot = invmod(a[col][col], prime);
    for (int row = col + 1; row < n; ++row) {
      if (a[row][col] == 0) continue;
      const std::uint64_t factor = mulmod(a[row][col], inv_pivot, prime);
      for (int j = col; j < n; ++j)
        a[row][j] = submod(a[row][j], mulmod(factor, a[col][j], prime), prime);
    }
  }
  return negate ? (prime - det) % prime : det;
}

std::uint64_t random_eval_fingerprint(const FiniteGroup& g, const Subset& s,
                                      std::uint64_t seed,
                                      std::uint64_t prime) {
  std::vector<std::uint64_t> values(g.order);
  for (int v = 0; v < g.order; ++v)
    values[v] = fingerprint_point_value(seed, 0, v, prime);
  return fingerprint_at(g, s, values, prime);
}

bool identity_equal(const Polynomial& p, const Polynomial& q,
                    std::uint64_t seed, std::uint64_t prime, int points,
                    IdentityCheckStats* stats) {
  std::vector<int> vars = p.variables();
  {
    const auto qv = q.variables();
    vars.insert(vars.end(), qv.begin(), qv.end());
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  }
  IdentityCheckStats local;
  IdentityCheckStats& st = stats != nullptr ? *stats : local;
  st = IdentityCheckStats{};
  for (int t = 0; t < points; ++t) {
    std::map<int, std::uint64_t> point;
    for (int v : vars) point[v] = fingerprint_point_value(seed, t, v, prime);
    ++st.points_compared;
    if (p.evaluate_mod(point, prime) != q.evaluate_mod(point, prime)) {
      st.fingerprint_mismatch = true;
      return false;
    }
  }
  st.symbolic_compared = true;
  return p == q;
}

}  // namespace gdet
