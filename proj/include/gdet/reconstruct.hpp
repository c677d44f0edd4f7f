#ifndef GDET_RECONSTRUCT_HPP
#define GDET_RECONSTRUCT_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "gdet/group.hpp"
#include "gdet/group_matrix.hpp"
#include "gdet/polynomial.hpp"

namespace gdet {

/// Constraint on the product of a pair of non-identity labels, read off the
/// degree-(n-3) monomials: a*b (and b*a) must land in the inverses of the
/// candidate set, and a 2n coefficient forces a*b = b*a.
struct ProductConstraint {
  int a = 0;
  int b = 0;  // a <= b
  std::vector<int> candidates;
  bool commuting = false;
};

/// Reads the inverse pairing from the x_e^{n-2} x_a x_b monomials. The
/// result maps every non-identity label to its unique partner and is an
/// involution.
std::map<int, int> extract_inverses(const Polynomial& theta, int identity_var);

std::vector<ProductConstraint> extract_constraints(const Polynomial& theta,
                                                   int identity_var);

struct ReconstructOptions {
  DetOptions det{.full_symbolic_cap = kDefaultOrderCap};
  std::uint64_t seed = 0;
  std::uint64_t prime = kFingerprintPrime;
  int fingerprint_points = 3;
};

struct ReconstructedGroup {
  FiniteGroup group;        // identity at index 0
  std::vector<int> labels;  // labels[i] = variable index of element i
};

/// Recovers a multiplication table whose group determinant equals `theta`
/// exactly (under the label assignment in the result). Constraint-guided
/// backtracking over Latin-square completions with associativity
/// propagation; every completed candidate is verified against `theta` by
/// fingerprints and then symbolically before being accepted.
ReconstructedGroup reconstruct_group(const Polynomial& theta, int identity_var,
                                     const ReconstructOptions& opts = {});

}  // namespace gdet

#endif  // GDET_RECONSTRUCT_HPP
