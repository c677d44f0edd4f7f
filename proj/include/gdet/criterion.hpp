#ifndef GDET_CRITERION_HPP
#define GDET_CRITERION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdet/group.hpp"
#include "gdet/group_matrix.hpp"
#include "gdet/numeric.hpp"
#include "gdet/polynomial.hpp"

namespace gdet {

struct CriterionOptions {
  DetOptions det{.full_symbolic_cap = kDefaultOrderCap};
  std::uint64_t seed = 0;
  std::uint64_t prime = kFingerprintPrime;
  int fingerprint_points = 3;
  // Restrict candidate bijections to ones matching element orders. Sound
  // for the search (any witness is an iso or anti-iso, and both preserve
  // orders); disable to stress the unpruned search.
  bool order_prune = true;
};

enum class Verdict { Subgroup, NotSubgroup, HypothesisFailed };
enum class HypothesisFailure { IdentityMissing, OrderDoesNotDivide };
enum class BijectionClass { Isomorphism, AntiIsomorphism, Both, Neither };

const char* verdict_name(Verdict v);
const char* hypothesis_failure_name(HypothesisFailure f);
const char* bijection_class_name(BijectionClass c);

struct CriterionWitness {
  int catalog_order = 0;
  int catalog_index = 0;
  std::string catalog_name;
  ElementBijection phi;
};

struct SearchStats {
  std::uint64_t candidates_examined = 0;
  std::uint64_t fingerprint_rejections = 0;
  std::uint64_t symbolic_confirmations = 0;
};

struct CriterionReport {
  Verdict verdict = Verdict::NotSubgroup;
  std::optional<HypothesisFailure> hypothesis_failure;
  std::optional<CriterionWitness> witness;
  std::optional<BijectionClass> phi_class;
  SearchStats search_stats;
};

/// Checks Theta_G(S) == Theta(S)^{|G|/|S|} for a subgroup S, with Theta(S)
/// taken over S's inherited multiplication and G's variable indices.
bool forward_check(const FiniteGroup& g, const Subset& s,
                   const CriterionOptions& opts = {});

/// The determinant-based subgroup test. Searches catalog(|S|) for a group H
/// and an identity-preserving bijection phi with
/// Theta_G(S) = phi(Theta(H))^{|G|/|H|}; candidates are screened by modular
/// fingerprints and only confirmed symbolically. First confirmed witness
/// wins under deterministic enumeration. The verdict always agrees with
/// the closure oracle.
CriterionReport subgroup_test_det(const FiniteGroup& g, const Subset& s,
                                  const CriterionOptions& opts = {});

BijectionClass classify_bijection(const FiniteGroup& h,
                                  const ElementBijection& phi,
                                  const FiniteGroup& g);

enum class LemmaMode { FullGroup, SubsetMode };

struct LemmaCheck {
  int clause = 0;          // 1..4
  std::string case_label;  // which sub-case of the clause
  std::string subject;     // monomial or triple under test
  bool requires_exact = false;
  BigInt expected;  // exact value when requires_exact, else nonzero required
  BigInt observed;
  bool pass = false;
};

struct MonomialLemmaReport {
  std::string group_name;
  LemmaMode mode = LemmaMode::FullGroup;
  std::vector<LemmaCheck> checks;
  bool passed = false;
};

/// Checks the monomial structure of Theta(G) (or Theta_G(S) in subset
/// mode): every occurring monomial's variables can be ordered to multiply
/// to e; inverse-pair and triple monomials occur; and coefficients of
/// x_e^{n-3} x_a x_b x_c monomials follow the n/3, n, n, 2n table.
MonomialLemmaReport verify_monomial_lemmas(
    const FiniteGroup& g, const std::optional<Subset>& subset = std::nullopt,
    const CriterionOptions& opts = {});

struct GroupAlgebraInverse {
  bool singular = false;
  std::vector<BigRational> coefficients;  // empty when singular
};

/// Inverts sum_g coeffs[g] * g in the rational group algebra by exact
/// elimination on the regular-representation matrix. Singular exactly when
/// that matrix (Theta evaluated at the coefficients) is singular.
GroupAlgebraInverse group_algebra_inverse(
    const FiniteGroup& g, const std::vector<BigRational>& coeffs);

}  // namespace gdet

#endif  // GDET_CRITERION_HPP
