#ifndef GDET_GROUP_HPP
#define GDET_GROUP_HPP

#include <string>
#include <vector>

namespace gdet {

inline constexpr int kDefaultOrderCap = 14;
inline constexpr int kCatalogMaxOrder = 12;

/// A finite group as a validated Cayley table over dense element
/// indices 0..n-1. Immutable after construction; safe to share.
struct FiniteGroup {
  int order = 0;
  std::vector<std::vector<int>> table;  // table[i][j] = index of g_i * g_j
  int identity = 0;
  std::vector<int> inverses;
  std::string name;
  // Optional display labels, one per element (empty = use indices).
  std::vector<std::string> element_labels;

  int mul(int a, int b) const { return table[a][b]; }
  int inv(int a) const { return inverses[a]; }

  int element_order(int g) const;
  bool is_abelian() const;
  // Multiset of element orders, sorted; equal profiles are a necessary
  // condition for isomorphism.
  std::vector<int> order_profile() const;
};

/// An element mask of a FiniteGroup. `members` is sorted and duplicate-free.
struct Subset {
  const FiniteGroup* group = nullptr;
  std::vector<int> members;

  int size() const { return static_cast<int>(members.size()); }
  bool contains(int g) const;
};

/// A bijection H -> S where S is a subset of some group G.
/// map[h] is the image of H's element h as an element index of G.
struct ElementBijection {
  const FiniteGroup* domain = nullptr;  // H
  Subset codomain;                      // S, subset of G
  std::vector<int> map;
};

// Validates the table (Latin square, identity, associativity, inverses)
// and computes identity/inverses. Element indexing is taken as given;
// the identity may sit at any index.
FiniteGroup from_cayley_table(const std::vector<std::vector<int>>& table,
                              const std::string& name);

FiniteGroup cyclic(int n, int order_cap = kDefaultOrderCap);
FiniteGroup dihedral(int n, int order_cap = kDefaultOrderCap);  // order 2n
FiniteGroup symmetric(int n, int order_cap = kDefaultOrderCap);  // order n!
FiniteGroup quaternion8(int order_cap = kDefaultOrderCap);
FiniteGroup alternating4(int order_cap = kDefaultOrderCap);
FiniteGroup dicyclic3(int order_cap = kDefaultOrderCap);  // <a,b | a^6, b^2=a^3, bab^-1=a^-1>
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h,
                           int order_cap = kDefaultOrderCap);

/// One representative per isomorphism class for 1 <= order <= 12.
/// The listing and its internal order are fixed; entries are validated and
/// pairwise non-isomorphic (checked once per process).
const std::vector<FiniteGroup>& catalog(int order);

Subset make_subset(const FiniteGroup& g, std::vector<int> members);
Subset full_subset(const FiniteGroup& g);

/// Ground-truth closure test: e in S and S closed under product and inverse.
bool is_subgroup_oracle(const Subset& s);

/// All subgroups of g, by brute force over subsets. Ascending by size,
/// then lexicographic.
std::vector<Subset> enumerate_subgroups(const FiniteGroup& g,
                                        int order_cap = kDefaultOrderCap);

/// Ordering of G's elements as s_p * rep_q over right cosets of S, so the
/// group matrix becomes block-diagonal. Position (q-1)*|S| + (p-1) holds
/// s_p * rep_q; the first |S| positions are exactly S.
std::vector<int> coset_ordering(const Subset& s);

/// Backtracking isomorphism test with order-profile pruning.
bool is_isomorphic(const FiniteGroup& a, const FiniteGroup& b);

}  // namespace gdet

#endif  // GDET_GROUP_HPP
