#include "gdet/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "gdet/errors.hpp"

namespace gdet {

int FiniteGroup::element_order(int g) const {
  int k = 1;
  int acc = g;
  while (acc != identity) {
    acc = mul(acc, g);
    ++k;
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order; ++a)
    for (int b = a + 1; b < order; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<int> FiniteGroup::order_profile() const {
  std::vector<int> profile(order);
  for (int g = 0; g < order; ++g) profile[g] = element_order(g);
  std::sort(profile.begin(), profile.end());
  return profile;
}

bool Subset::contains(int g) const {
  return std::binary_search(members.begin(), members.end(), g);
}

namespace {

void check_order_cap(int order, int cap, const std::string& what) {
  if (order > cap)
    fail(ErrorKind::OrderCapExceeded,
         what + " has order " + std::to_string(order) +
             " above the cap of " + std::to_string(cap));
}

}  // namespace

FiniteGroup from_cayley_table(const std::vector<std::vector<int>>& table,
                              const std::string& name) {
  const int n = static_cast<int>(table.size());
  if (n == 0) fail(ErrorKind::InvalidSpec, "empty Cayley table");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n)
      fail(ErrorKind::InvalidSpec,
           "row " + std::to_string(i) + " has " +
               std::to_string(table[i].size()) + " entries, expected " +
               std::to_string(n));
  }

  // Latin square: every row and column is a permutation of 0..n-1.
  for (int i = 0; i < n; ++i) {
    std::vector<bool> seen_row(n, false), seen_col(n, false);
    for (int j = 0; j < n; ++j) {
      const int r = table[i][j];
      if (r < 0 || r >= n)
        fail(ErrorKind::NotLatinSquare,
             "entry (" + std::to_string(i) + "," + std::to_string(j) +
                 ") = " + std::to_string(r) + " is out of range");
      if (seen_row[r])
        fail(ErrorKind::NotLatinSquare, "row " + std::to_string(i) +
                                            " repeats " + std::to_string(r));
      seen_row[r] = true;
      const int c = table[j][i];
      if (seen_col[c])
        fail(ErrorKind::NotLatinSquare, "column " + std::to_string(i) +
                                            " repeats " + std::to_string(c));
      seen_col[c] = true;
    }
  }

  // Two-sided identity.
  int identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      ok = table[e][i] == i && table[i][e] == i;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) fail(ErrorKind::NoIdentity, "no two-sided identity");

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (table[table[i][j]][k] != table[i][table[j][k]])
          fail(ErrorKind::NotAssociative,
               "(" + std::to_string(i) + "*" + std::to_string(j) + ")*" +
                   std::to_string(k) + " != " + std::to_string(i) + "*(" +
                   std::to_string(j) + "*" + std::to_string(k) + ")");

  std::vector<int> inverses(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (table[i][j] == identity && table[j][i] == identity) {
        inverses[i] = j;
        break;
      }
    }
    if (inverses[i] < 0)
      fail(ErrorKind::NoInverse,
           "element " + std::to_string(i) + " has no two-sided inverse");
  }

  FiniteGroup g;
  g.order = n;
  g.table = table;
  g.identity = identity;
  g.inverses = std::move(inverses);
  g.name = name;
  return g;
}

FiniteGroup cyclic(int n, int order_cap) {
  if (n < 1) fail(ErrorKind::InvalidSpec, "cyclic group needs n >= 1");
  check_order_cap(n, order_cap, "cyclic(" + std::to_string(n) + ")");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  return from_cayley_table(table, "Z" + std::to_string(n));
}

FiniteGroup dihedral(int n, int order_cap) {
  if (n < 1) fail(ErrorKind::InvalidSpec, "dihedral group needs n >= 1");
  check_order_cap(2 * n, order_cap, "dihedral(" + std::to_string(n) + ")");
  // Indices 0..n-1 are rotations r^k, n..2n-1 are reflections s r^k,
  // with the relation r^a s = s r^(-a).
  const int m = 2 * n;
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      const bool xr = x >= n, yr = y >= n;
      const int xi = x % n, yi = y % n;
      int r;
      if (!xr && !yr)
        r = (xi + yi) % n;  // r^a r^b
      else if (!xr && yr)
        r = n + (yi - xi + n) % n;  // r^a (s r^b) = s r^(b-a)
      else if (xr && !yr)
        r = n + (xi + yi) % n;  // (s r^a) r^b = s r^(a+b)
      else
        r = (yi - xi + n) % n;  // (s r^a)(s r^b) = r^(b-a)
      table[x][y] = r;
    }
  }
  return from_cayley_table(table, "D" + std::to_string(n));
}

namespace {

std::vector<std::vector<int>> permutations_lex(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> all;
  do {
    all.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return all;
}

std::vector<int> compose_perm(const std::vector<int>& f,
                              const std::vector<int>& g) {
  // (f*g)(i) = f(g(i))
  std::vector<int> r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = f[g[i]];
  return r;
}

bool perm_is_even(const std::vector<int>& p) {
  int transpositions = 0;
  std::vector<bool> seen(p.size(), false);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

FiniteGroup permutation_group(const std::vector<std::vector<int>>& perms,
                              const std::string& name) {
  const int m = static_cast<int>(perms.size());
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const auto prod = compose_perm(perms[i], perms[j]);
      const auto it = std::find(perms.begin(), perms.end(), prod);
      if (it == perms.end())
        fail(ErrorKind::Internal, "permutation set not closed");
      table[i][j] = static_cast<int>(it - perms.begin());
    }
  }
  return from_cayley_table(table, name);
}

}  // namespace

FiniteGroup symmetric(int n, int order_cap) {
  if (n < 1) fail(ErrorKind::InvalidSpec, "symmetric group needs n >= 1");
  if (n > 4)
    fail(ErrorKind::OrderCapExceeded,
         "symmetric(" + std::to_string(n) + ") is past the supported range");
  int fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  check_order_cap(fact, order_cap, "symmetric(" + std::to_string(n) + ")");
  return permutation_group(permutations_lex(n), "S" + std::to_string(n));
}

FiniteGroup alternating4(int order_cap) {
  check_order_cap(12, order_cap, "alternating4");
  std::vector<std::vector<int>> evens;
  for (const auto& p : permutations_lex(4))
    if (perm_is_even(p)) evens.push_back(p);
  return permutation_group(evens, "A4");
}

FiniteGroup quaternion8(int order_cap) {
  check_order_cap(8, order_cap, "quaternion8");
  // 0:1  1:i  2:j  3:k  4:-1  5:-i  6:-j  7:-k
  auto neg = [](int x) { return x < 4 ? x + 4 : x - 4; };
  std::vector<std::vector<int>> table(8, std::vector<int>(8));
  // Base table on units {1,i,j,k} with signs.
  const int unit_prod[4][4] = {
      {0, 1, 2, 3},       // 1*{1,i,j,k}
      {1, 4, 3, 6},       // i*{1,i,j,k} = i,-1,k,-j
      {2, 7, 4, 1},       // j*{1,i,j,k} = j,-k,-1,i
      {3, 2, 5, 4},       // k*{1,i,j,k} = k,j,-i,-1
  };
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) {
      int r = unit_prod[a % 4][b % 4];
      if (a >= 4) r = neg(r);
      if (b >= 4) r = neg(r);
      table[a][b] = r;
    }
  }
  return from_cayley_table(table, "Q8");
}

FiniteGroup dicyclic3(int order_cap) {
  check_order_cap(12, order_cap, "dicyclic3");
  // 0..5 are a^i, 6..11 are a^i b, with b^2 = a^3 and b a b^-1 = a^-1.
  std::vector<std::vector<int>> table(12, std::vector<int>(12));
  for (int x = 0; x < 12; ++x) {
    for (int y = 0; y < 12; ++y) {
      const bool xb = x >= 6, yb = y >= 6;
      const int xi = x % 6, yi = y % 6;
      int r;
      if (!xb && !yb)
        r = (xi + yi) % 6;
      else if (!xb)
        r = 6 + (xi + yi) % 6;  // a^i (a^j b) = a^(i+j) b
      else if (!yb)
        r = 6 + (xi - yi + 6) % 6;  // (a^i b) a^j = a^(i-j) b
      else
        r = (xi - yi + 9) % 6;  // (a^i b)(a^j b) = a^(i-j) b^2 = a^(i-j+3)
      table[x][y] = r;
    }
  }
  return from_cayley_table(table, "Dic3");
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h,
                           int order_cap) {
  const int n = g.order * h.order;
  check_order_cap(n, order_cap, "direct product " + g.name + "x" + h.name);
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  auto index = [&](int a, int b) { return a * h.order + b; };
  for (int a1 = 0; a1 < g.order; ++a1)
    for (int b1 = 0; b1 < h.order; ++b1)
      for (int a2 = 0; a2 < g.order; ++a2)
        for (int b2 = 0; b2 < h.order; ++b2)
          table[index(a1, b1)][index(a2, b2)] =
              index(g.mul(a1, a2), h.mul(b1, b2));
  return from_cayley_table(table, g.name + "x" + h.name);
}

Subset make_subset(const FiniteGroup& g, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  for (size_t i = 0; i < members.size(); ++i) {
    if (members[i] < 0 || members[i] >= g.order)
      fail(ErrorKind::InvalidSpec,
           "subset member " + std::to_string(members[i]) + " out of range");
    if (i > 0 && members[i] == members[i - 1])
      fail(ErrorKind::InvalidSpec,
           "duplicate subset member " + std::to_string(members[i]));
  }
  return Subset{&g, std::move(members)};
}

Subset full_subset(const FiniteGroup& g) {
  std::vector<int> all(g.order);
  std::iota(all.begin(), all.end(), 0);
  return Subset{&g, std::move(all)};
}

bool is_subgroup_oracle(const Subset& s) {
  const FiniteGroup& g = *s.group;
  if (!s.contains(g.identity)) return false;
  for (int a : s.members) {
    if (!s.contains(g.inv(a))) return false;
    for (int b : s.members)
      if (!s.contains(g.mul(a, b))) return false;
  }
  return true;
}

std::vector<Subset> enumerate_subgroups(const FiniteGroup& g, int order_cap) {
  check_order_cap(g.order, std::min(order_cap, 20), g.name);
  std::vector<Subset> result;
  const int n = g.order;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) members.push_back(i);
    if (members.empty() || n % static_cast<int>(members.size()) != 0) continue;
    Subset s{&g, std::move(members)};
    if (is_subgroup_oracle(s)) result.push_back(std::move(s));
  }
  std::sort(result.begin(), result.end(),
            [](const Subset& a, const Subset& b) {
              if (a.members.size() != b.members.size())
                return a.members.size() < b.members.size();
              return a.members < b.members;
            });
  return result;
}

std::vector<int> coset_ordering(const Subset& s) {
  if (!is_subgroup_oracle(s))
    fail(ErrorKind::NotASubgroup, "coset ordering needs a subgroup");
  const FiniteGroup& g = *s.group;
  const int m = s.size();
  std::vector<bool> covered(g.order, false);
  std::vector<int> ordering;
  ordering.reserve(g.order);
  // First representative is the identity, so the leading block is S itself.
  std::vector<int> reps{g.identity};
  for (int cand = 0; cand < g.order; ++cand) {
    bool in_existing = false;
    for (int rep : reps) {
      for (int p = 0; p < m && !in_existing; ++p)
        in_existing = g.mul(s.members[p], rep) == cand;
      if (in_existing) break;
    }
    if (!in_existing) reps.push_back(cand);
  }
  for (int rep : reps)
    for (int p = 0; p < m; ++p) ordering.push_back(g.mul(s.members[p], rep));
  for (int x : ordering) {
    if (covered[x]) fail(ErrorKind::Internal, "coset ordering not a permutation");
    covered[x] = true;
  }
  return ordering;
}

namespace {

// Backtracking extension of a partial bijection a -> b that respects both
// tables. Assignments propagate through products of already-mapped pairs.
bool extend_isomorphism(const FiniteGroup& a, const FiniteGroup& b,
                        std::vector<int>& map, std::vector<bool>& used) {
  int next = -1;
  for (int i = 0; i < a.order; ++i) {
    if (map[i] < 0) {
      next = i;
      break;
    }
  }
  if (next < 0) return true;

  for (int image = 0; image < b.order; ++image) {
    if (used[image]) continue;
    if (a.element_order(next) != b.element_order(image)) continue;

    // Tentatively assign and close under products with mapped elements.
    std::vector<std::pair<int, int>> assigned;
    auto assign = [&](int x, int y) -> bool {
      if (map[x] >= 0) return map[x] == y;
      if (used[y]) return false;
      map[x] = y;
      used[y] = true;
      assigned.emplace_back(x, y);
      return true;
    };
    bool ok = assign(next, image);
    for (size_t idx = 0; ok && idx < assigned.size(); ++idx) {
      const int x = assigned[idx].first;
      for (int z = 0; z < a.order && ok; ++z) {
        if (map[z] < 0) continue;
        ok = assign(a.mul(x, z), b.mul(map[x], map[z])) &&
             assign(a.mul(z, x), b.mul(map[z], map[x]));
      }
    }
    if (ok && extend_isomorphism(a, b, map, used)) return true;
    for (auto& [x, y] : assigned) {
      map[x] = -1;
      used[y] = false;
    }
  }
  return false;
}

}  // namespace

bool is_isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order != b.order) return false;
  if (a.order_profile() != b.order_profile()) return false;
  std::vector<int> map(a.order, -1);
  std::vector<bool> used(b.order, false);
  map[a.identity] = b.identity;
  used[b.identity] = true;
  return extend_isomorphism(a, b, map, used);
}

}  // namespace gdet
