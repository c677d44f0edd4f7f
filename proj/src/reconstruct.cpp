#include "gdet/reconstruct.hpp"

#include <algorithm>
#include <set>

#include "gdet/errors.hpp"

namespace gdet {

namespace {

struct Labeling {
  int n = 0;
  int identity_var = 0;
  std::vector<int> labels;  // variable of each element; labels[0] = identity
  std::map<int, int> index_of;
};

Labeling validate_determinant(const Polynomial& theta, int identity_var) {
  if (theta.is_zero())
    fail(ErrorKind::MalformedDeterminant, "zero polynomial");
  const int n = theta.total_degree();
  if (n < 1 || !theta.is_homogeneous(n))
    fail(ErrorKind::MalformedDeterminant,
         "expected a homogeneous polynomial of positive degree");

  Labeling lab;
  lab.n = n;
  lab.identity_var = identity_var;
  const auto vars = theta.variables();
  if (std::find(vars.begin(), vars.end(), identity_var) == vars.end())
    fail(ErrorKind::MalformedDeterminant,
         "identity variable x" + std::to_string(identity_var) +
             " does not occur");
  if (static_cast<int>(vars.size()) != n)
    fail(ErrorKind::MalformedDeterminant,
         std::to_string(vars.size()) + " labels for degree " +
             std::to_string(n));
  if (theta.coefficient_of(Monomial::variable(identity_var, n)) != 1)
    fail(ErrorKind::MalformedDeterminant,
         "coefficient of x" + std::to_string(identity_var) + "^" +
             std::to_string(n) + " is not 1");

  lab.labels.push_back(identity_var);
  for (int v : vars)
    if (v != identity_var) lab.labels.push_back(v);
  for (size_t i = 0; i < lab.labels.size(); ++i)
    lab.index_of[lab.labels[i]] = static_cast<int>(i);
  return lab;
}

// x_e^{pad} * product of factors, as a monomial; pad may go negative when
// factors include the identity, which only balances out for tiny orders.
// Returns false when the combined identity exponent would be negative.
bool padded_monomial(int identity_var, int pad, const std::vector<int>& factors,
                     Monomial& out) {
  std::map<int, int> exps;
  exps[identity_var] += pad;
  for (int f : factors) exps[f] += 1;
  std::vector<Monomial::VarExp> pairs;
  for (const auto& [v, e] : exps) {
    if (e < 0) return false;
    if (e > 0) pairs.emplace_back(v, e);
  }
  out = Monomial::from_exponents(std::move(pairs));
  return true;
}

}  // namespace

std::map<int, int> extract_inverses(const Polynomial& theta,
                                    int identity_var) {
  const Labeling lab = validate_determinant(theta, identity_var);
  std::map<int, int> inverses;
  for (size_t i = 1; i < lab.labels.size(); ++i) {
    const int a = lab.labels[i];
    std::vector<int> partners;
    for (size_t j = 1; j < lab.labels.size(); ++j) {
      const int b = lab.labels[j];
      Monomial m;
      if (!padded_monomial(identity_var, lab.n - 2, {a, b}, m)) continue;
      if (theta.coefficient_of(m) != 0) partners.push_back(b);
    }
    if (partners.size() != 1)
      fail(ErrorKind::MalformedDeterminant,
           "label x" + std::to_string(a) + " has " +
               std::to_string(partners.size()) + " inverse candidates");
    inverses[a] = partners.front();
  }
  for (const auto& [a, b] : inverses)
    if (inverses.at(b) != a)
      fail(ErrorKind::MalformedDeterminant,
           "inverse pairing is not an involution");
  return inverses;
}

std::vector<ProductConstraint> extract_constraints(const Polynomial& theta,
                                                   int identity_var) {
  const Labeling lab = validate_determinant(theta, identity_var);
  const int n = lab.n;
  const bool third = n % 3 == 0;
  std::vector<ProductConstraint> result;
  for (size_t i = 1; i < lab.labels.size(); ++i) {
    for (size_t j = i; j < lab.labels.size(); ++j) {
      ProductConstraint pc;
      pc.a = lab.labels[i];
      pc.b = lab.labels[j];
      for (size_t k = 1; k < lab.labels.size(); ++k) {
        const int c = lab.labels[k];
        Monomial m;
        if (!padded_monomial(identity_var, n - 3, {pc.a, pc.b, c}, m))
          continue;
        const BigInt coeff = theta.coefficient_of(m);
        if (coeff == 0) continue;
        if (coeff != n && coeff != 2 * n && !(third && 3 * coeff == n))
          fail(ErrorKind::MalformedDeterminant,
               "coefficient " + coeff.str() + " of " + m.to_string() +
                   " is outside the n/3, n, 2n table");
        pc.candidates.push_back(c);
        if (coeff == 2 * n) pc.commuting = true;
      }
      result.push_back(std::move(pc));
    }
  }
  return result;
}

namespace {

struct TableSearch {
  int n;
  const Labeling& lab;
  const Polynomial& theta;
  const ReconstructOptions& opts;
  // dom[i][j]: bitmask of allowed values for element product i*j (i,j >= 1).
  std::vector<std::vector<std::uint16_t>> dom;
  std::vector<std::vector<bool>> commuting;

  // Fingerprint values of theta, per point, plus the per-label values.
  std::vector<std::uint64_t> theta_fp;
  std::vector<std::vector<std::uint64_t>> point_values;  // [point][element]

  long completions = 0;
  bool accepted = false;
  FiniteGroup result;

  struct State {
    std::vector<std::vector<int>> table;
    std::vector<std::uint16_t> row_used, col_used;
    int unknown = 0;
  };

  bool assign(State& st, int i, int j, int v) {
    const int cur = st.table[i][j];
    if (cur == v) return true;
    if (cur != -1) return false;
    const std::uint16_t bit = static_cast<std::uint16_t>(1u << v);
    if ((st.row_used[i] & bit) || (st.col_used[j] & bit)) return false;
    if (i > 0 && j > 0 && !(dom[i][j] & bit)) return false;
    st.table[i][j] = v;
    st.row_used[i] |= bit;
    st.col_used[j] |= bit;
    --st.unknown;
    return true;
  }

  // Associativity fixpoint: derive (x*y)*z = x*(y*z) wherever two of the
  // three chained products are known. Returns false on contradiction.
  bool propagate(State& st) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          const int xy = st.table[x][y];
          for (int z = 0; z < n; ++z) {
            const int yz = st.table[y][z];
            const int left = xy == -1 ? -1 : st.table[xy][z];
            const int right = yz == -1 ? -1 : st.table[x][yz];
            if (left != -1 && right != -1) {
              if (left != right) return false;
            } else if (left != -1 && yz != -1) {
              if (!assign(st, x, yz, left)) return false;
              changed = true;
            } else if (right != -1 && xy != -1) {
              if (!assign(st, xy, z, right)) return false;
              changed = true;
            }
          }
        }
        // Mirror commuting cells as soon as one side is known.
        for (int y = 1; y < n; ++y)
          if (x >= 1 && commuting[x][y] && st.table[x][y] != -1 &&
              st.table[y][x] == -1) {
            if (!assign(st, y, x, st.table[x][y])) return false;
            changed = true;
          }
      }
    }
    return true;
  }

  bool verify(const std::vector<std::vector<int>>& table) {
    FiniteGroup candidate;
    try {
      candidate = from_cayley_table(table, "reconstructed");
    } catch (const GdetError&) {
      return false;  // completed Latin square that is not a group
    }
    ++completions;
    std::map<int, int> to_labels;
    for (int i = 0; i < n; ++i) to_labels[i] = lab.labels[i];
    for (int t = 0; t < opts.fingerprint_points; ++t) {
      std::vector<std::uint64_t> values(n);
      for (int i = 0; i < n; ++i) values[i] = point_values[t][i];
      if (fingerprint_at(candidate, full_subset(candidate), values,
                         opts.prime) != theta_fp[t])
        return false;
    }
    const Polynomial recomputed =
        gen_group_det(candidate, full_subset(candidate), opts.det)
            .rename(to_labels);
    if (recomputed != theta) return false;
    result = std::move(candidate);
    accepted = true;
    return true;
  }

  bool search(State st) {
    if (!propagate(st)) return false;
    if (st.unknown == 0) return verify(st.table);

    // Branch on the cell with the fewest feasible values.
    int bi = -1, bj = -1, best = n + 1;
    for (int i = 1; i < n; ++i) {
      for (int j = 1; j < n; ++j) {
        if (st.table[i][j] != -1) continue;
        int count = 0;
        for (int v = 0; v < n; ++v) {
          const std::uint16_t bit = static_cast<std::uint16_t>(1u << v);
          if ((dom[i][j] & bit) && !(st.row_used[i] & bit) &&
              !(st.col_used[j] & bit))
            ++count;
        }
        if (count < best) {
          best = count;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0) return verify(st.table);  // no unknowns left in the grid
    if (best == 0) return false;
    for (int v = 0; v < n; ++v) {
      State branch = st;
      if (!assign(branch, bi, bj, v)) continue;
      if (search(std::move(branch))) return true;
    }
    return false;
  }
};

}  // namespace

ReconstructedGroup reconstruct_group(const Polynomial& theta, int identity_var,
                                     const ReconstructOptions& opts) {
  const Labeling lab = validate_determinant(theta, identity_var);
  const int n = lab.n;
  if (n == 1) {
    ReconstructedGroup out;
    out.group = from_cayley_table({{0}}, "reconstructed");
    out.labels = {identity_var};
    return out;
  }
  if (n > opts.det.order_cap)
    fail(ErrorKind::OrderCapExceeded,
         "reconstruction of order " + std::to_string(n) + " above the cap");

  const auto inverses = extract_inverses(theta, identity_var);
  const auto constraints = extract_constraints(theta, identity_var);

  TableSearch search{.n = n, .lab = lab, .theta = theta, .opts = opts};
  search.dom.assign(n, std::vector<std::uint16_t>(n, 0));
  search.commuting.assign(n, std::vector<bool>(n, false));

  // Products with the inverse are the identity; everything else maps into
  // the inverses of the candidate set for its pair.
  for (int i = 1; i < n; ++i) {
    const int a = lab.labels[i];
    for (int j = 1; j < n; ++j) {
      const int b = lab.labels[j];
      if (inverses.at(a) == b) {
        search.dom[i][j] = 1;  // forced to the identity
      }
    }
  }
  for (const auto& pc : constraints) {
    const int i = lab.index_of.at(pc.a);
    const int j = lab.index_of.at(pc.b);
    std::uint16_t mask = 0;
    for (int c : pc.candidates)
      mask |= static_cast<std::uint16_t>(
          1u << lab.index_of.at(inverses.at(c)));
    if (inverses.at(pc.a) != pc.b) {
      search.dom[i][j] = mask;
      search.dom[j][i] = mask;
    }
    search.commuting[i][j] = search.commuting[j][i] = pc.commuting;
  }

  search.theta_fp.resize(opts.fingerprint_points);
  search.point_values.assign(opts.fingerprint_points,
                             std::vector<std::uint64_t>(n));
  for (int t = 0; t < opts.fingerprint_points; ++t) {
    std::map<int, std::uint64_t> point;
    for (int i = 0; i < n; ++i) {
      const std::uint64_t value =
          fingerprint_point_value(opts.seed, t, lab.labels[i], opts.prime);
      point[lab.labels[i]] = value;
      search.point_values[t][i] = value;
    }
    search.theta_fp[t] = theta.evaluate_mod(point, opts.prime);
  }

  TableSearch::State st;
  st.table.assign(n, std::vector<int>(n, -1));
  st.row_used.assign(n, 0);
  st.col_used.assign(n, 0);
  st.unknown = n * n;
  for (int j = 0; j < n; ++j)
    if (!search.assign(st, 0, j, j) ||
        (j > 0 && !search.assign(st, j, 0, j)))
      fail(ErrorKind::Internal, "identity row/column seeding failed");
  for (int i = 1; i < n; ++i) {
    const int j = lab.index_of.at(inverses.at(lab.labels[i]));
    if (!search.assign(st, i, j, 0))
      fail(ErrorKind::NoConsistentTable,
           "inverse pairing conflicts with the Latin property");
  }

  if (search.search(std::move(st))) {
    ReconstructedGroup out;
    out.group = std::move(search.result);
    out.labels = lab.labels;
    return out;
  }
  if (search.completions > 0)
    fail(ErrorKind::VerificationFailed,
         std::to_string(search.completions) +
             " completed tables, none matching the input determinant");
  fail(ErrorKind::NoConsistentTable,
       "constraint search exhausted without a complete table");
}

}  // namespace gdet
