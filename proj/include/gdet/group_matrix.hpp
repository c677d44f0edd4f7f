#ifndef GDET_GROUP_MATRIX_HPP
#define GDET_GROUP_MATRIX_HPP

#include <cstdint>
#include <vector>

#include "gdet/group.hpp"
#include "gdet/numeric.hpp"
#include "gdet/polynomial.hpp"

namespace gdet {

/// Entry value marking a position whose variable is zeroed (g not in S).
inline constexpr int kZeroEntry = -1;

/// The |G| x |G| grid with entry (i,j) = variable index of g_i * g_j^-1
/// when that element lies in S, else the zero sentinel.
struct GroupMatrix {
  int order = 0;
  std::vector<std::vector<int>> entries;
  const FiniteGroup* group = nullptr;
  Subset subset;

  int entry(int i, int j) const { return entries[i][j]; }
  bool fully_symbolic() const;  // no zero sentinel anywhere
};

struct DetOptions {
  int order_cap = kDefaultOrderCap;
  // Dense (no zero entry) determinants above this size are refused unless
  // the cap is raised; cost grows as n * 2^n polynomial multiply-adds.
  int full_symbolic_cap = 10;
  std::size_t term_budget = std::size_t(1) << 22;
  int threads = 1;
};

GroupMatrix group_matrix(const FiniteGroup& g, const Subset& s);

/// The |S| x |S| matrix of the subgroup S as a group in its own right,
/// keeping G's variable indices: entry (p,q) = x_{s_p * s_q^-1}.
GroupMatrix subgroup_matrix(const FiniteGroup& g, const Subset& s);

/// Exact symbolic determinant by dynamic-programming minor expansion over
/// column subsets (n * 2^n polynomial multiply-adds, zero entries pruned).
Polynomial determinant(const GroupMatrix& m, const DetOptions& opts = {});

/// Independent oracle: direct Leibniz expansion over all n! permutations.
/// Limited to n <= 6.
Polynomial leibniz_determinant(const GroupMatrix& m);

Polynomial gen_group_det(const FiniteGroup& g, const Subset& s,
                         const DetOptions& opts = {});

struct CosetBlockReport {
  std::vector<int> ordering;  // from coset_ordering(S)
  int block_size = 0;
  int block_count = 0;
  // After reordering rows and columns, every diagonal block equals
  // M_S(S;[x_s]) and every off-diagonal block is zero.
  bool verified = false;
};

CosetBlockReport coset_block_structure(const FiniteGroup& g, const Subset& s);

/// Numeric determinant of M_G(S) mod `prime` at the given variable values
/// (indexed by G element), via modular Gaussian elimination. O(n^3); never
/// expands symbolically.
std::uint64_t fingerprint_at(const FiniteGroup& g, const Subset& s,
                             const std::vector<std::uint64_t>& values,
                             std::uint64_t prime = kFingerprintPrime);

/// fingerprint_at at the seeded random point with index 0.
std::uint64_t random_eval_fingerprint(const FiniteGroup& g, const Subset& s,
                                      std::uint64_t seed,
                                      std::uint64_t prime = kFingerprintPrime);

struct IdentityCheckStats {
  int points_compared = 0;
  bool fingerprint_mismatch = false;
  bool symbolic_compared = false;
};

/// Equality protocol for claimed identities: fingerprints at `points`
/// seeded random points first (a mismatch disproves equality), then full
/// canonical-form comparison. Equality is never reported from
/// fingerprints alone.
bool identity_equal(const Polynomial& p, const Polynomial& q,
                    std::uint64_t seed, std::uint64_t prime = kFingerprintPrime,
                    int points = 3, IdentityCheckStats* stats = nullptr);

}  // namespace gdet

#endif  // GDET_GROUP_MATRIX_HPP
