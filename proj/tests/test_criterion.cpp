#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "gdet/criterion.hpp"
#include "gdet/errors.hpp"
#include "gdet/group.hpp"
#include "gdet/group_matrix.hpp"

using namespace gdet;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const GdetError& e) {
    return e.kind();
  }
  FAIL("expected a GdetError");
  return ErrorKind::Internal;
}

std::vector<Subset> subsets_with_identity_dividing(const FiniteGroup& g) {
  std::vector<Subset> out;
  for (unsigned mask = 0; mask < (1u << g.order); ++mask) {
    if (!(mask & (1u << g.identity))) continue;
    std::vector<int> members;
    for (int i = 0; i < g.order; ++i)
      if (mask & (1u << i)) members.push_back(i);
    if (g.order % static_cast<int>(members.size()) != 0) continue;
    out.push_back(make_subset(g, members));
  }
  return out;
}

// Multiplication induced on a subgroup's members, as its own FiniteGroup.
FiniteGroup induced_group(const FiniteGroup& g, const Subset& s) {
  std::map<int, int> index;
  for (int p = 0; p < s.size(); ++p) index[s.members[p]] = p;
  std::vector<std::vector<int>> table(s.size(), std::vector<int>(s.size()));
  for (int p = 0; p < s.size(); ++p)
    for (int q = 0; q < s.size(); ++q)
      table[p][q] = index.at(g.mul(s.members[p], s.members[q]));
  return from_cayley_table(table, "induced");
}

}  // namespace

TEST_CASE("forward_check on basic fixtures") {
  const FiniteGroup z3 = cyclic(3);
  CHECK(forward_check(z3, full_subset(z3)));
  CHECK(forward_check(z3, make_subset(z3, {0})));
  CHECK(kind_of([&] { forward_check(z3, make_subset(z3, {0, 1})); }) ==
        ErrorKind::NotASubgroup);

  // Order-3 subgroup of Z6: Theta_G(S) = (x0^3+x2^3+x4^3 - 3 x0 x2 x4)^2.
  const FiniteGroup z6 = cyclic(6);
  const Subset s = make_subset(z6, {0, 2, 4});
  CHECK(forward_check(z6, s));
  CHECK(gen_group_det(z6, s) ==
        Polynomial::parse("x0^3 + x2^3 + x4^3 - 3*x0*x2*x4").pow(2));
}

TEST_CASE("forward_check across all subgroups, orders <= 6") {
  for (int order = 1; order <= 6; ++order)
    for (const auto& g : catalog(order))
      for (const auto& s : enumerate_subgroups(g))
        CHECK(forward_check(g, s));
}

TEST_CASE("subgroup_test_det fixtures") {
  const FiniteGroup z3 = cyclic(3);
  const CriterionReport r1 = subgroup_test_det(z3, make_subset(z3, {0}));
  CHECK(r1.verdict == Verdict::Subgroup);
  REQUIRE(r1.witness.has_value());
  CHECK(r1.witness->catalog_order == 1);
  CHECK(r1.witness->catalog_name == "Z1");
  CHECK(r1.witness->phi.map == std::vector<int>{0});
  CHECK(r1.phi_class == BijectionClass::Both);

  // {e, g} with g of order 4: hypothesis holds, search exhausts.
  const FiniteGroup z4 = cyclic(4);
  const CriterionReport r2 = subgroup_test_det(z4, make_subset(z4, {0, 1}));
  CHECK(r2.verdict == Verdict::NotSubgroup);
  CHECK_FALSE(r2.witness.has_value());
  CHECK_FALSE(r2.phi_class.has_value());

  // <(123)> inside S3 (elements 3 and 4 are the 3-cycles).
  const FiniteGroup s3 = symmetric(3);
  const CriterionReport r3 = subgroup_test_det(s3, make_subset(s3, {0, 3, 4}));
  CHECK(r3.verdict == Verdict::Subgroup);
  REQUIRE(r3.witness.has_value());
  CHECK(r3.witness->catalog_name == "Z3");
  CHECK(r3.phi_class == BijectionClass::Both);  // abelian image

  const CriterionReport r4 = subgroup_test_det(s3, full_subset(s3));
  CHECK(r4.verdict == Verdict::Subgroup);
  CHECK(r4.witness->catalog_name == "S3");
  CHECK((r4.phi_class == BijectionClass::Isomorphism ||
         r4.phi_class == BijectionClass::AntiIsomorphism));
}

TEST_CASE("subgroup_test_det hypothesis failures") {
  const FiniteGroup z4 = cyclic(4);
  const CriterionReport no_e = subgroup_test_det(z4, make_subset(z4, {1, 3}));
  CHECK(no_e.verdict == Verdict::HypothesisFailed);
  CHECK(no_e.hypothesis_failure == HypothesisFailure::IdentityMissing);

  const CriterionReport bad_size =
      subgroup_test_det(z4, make_subset(z4, {0, 1, 2}));
  CHECK(bad_size.verdict == Verdict::HypothesisFailed);
  CHECK(bad_size.hypothesis_failure == HypothesisFailure::OrderDoesNotDivide);

  CHECK(no_e.search_stats.candidates_examined == 0);
}

TEST_CASE("verdicts agree with the closure oracle, orders <= 6") {
  CriterionOptions opts;
  for (int order = 1; order <= 6; ++order) {
    for (const auto& g : catalog(order)) {
      for (const auto& s : subsets_with_identity_dividing(g)) {
        const CriterionReport report = subgroup_test_det(g, s, opts);
        const bool truth = is_subgroup_oracle(s);
        CHECK(report.verdict ==
              (truth ? Verdict::Subgroup : Verdict::NotSubgroup));
        if (report.verdict == Verdict::Subgroup) {
          REQUIRE(report.witness.has_value());
          REQUIRE(report.phi_class.has_value());
          CHECK(report.phi_class != BijectionClass::Neither);
          // The witness group is isomorphic to S with its induced product.
          const FiniteGroup h =
              catalog(report.witness->catalog_order)[report.witness->catalog_index];
          CHECK(is_isomorphic(h, induced_group(g, s)));
          // phi really lands identity on identity.
          CHECK(report.witness->phi.map[h.identity] == g.identity);
          // Both only for abelian witnesses.
          if (report.phi_class == BijectionClass::Both) CHECK(h.is_abelian());
        }
      }
    }
  }
}

TEST_CASE("order-profile pruning does not change verdicts") {
  CriterionOptions no_prune;
  no_prune.order_prune = false;
  const FiniteGroup z6 = cyclic(6);
  for (const auto& s : subsets_with_identity_dividing(z6)) {
    const CriterionReport pruned = subgroup_test_det(z6, s);
    const CriterionReport unpruned = subgroup_test_det(z6, s, no_prune);
    CHECK(pruned.verdict == unpruned.verdict);
    CHECK(pruned.search_stats.candidates_examined <=
          unpruned.search_stats.candidates_examined);
  }

  // The spec's pruning example: {e, g} in Z6 dies without candidates under
  // the prune, and after one rejected candidate without it.
  const Subset s01 = make_subset(z6, {0, 1});
  CHECK(subgroup_test_det(z6, s01).search_stats.candidates_examined == 0);
  const CriterionReport wide = subgroup_test_det(z6, s01, no_prune);
  CHECK(wide.verdict == Verdict::NotSubgroup);
  CHECK(wide.search_stats.candidates_examined == 1);
}

TEST_CASE("criterion is invariant under identity-fixing relabelings") {
  const FiniteGroup s3 = symmetric(3);
  const std::vector<int> pi{0, 3, 1, 5, 2, 4};  // fixes the identity
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) table[pi[i]][pi[j]] = pi[s3.mul(i, j)];
  const FiniteGroup relabeled = from_cayley_table(table, "S3-relabeled");

  for (const auto& s : subsets_with_identity_dividing(s3)) {
    std::vector<int> mapped;
    for (int v : s.members) mapped.push_back(pi[v]);
    const CriterionReport a = subgroup_test_det(s3, s);
    const CriterionReport b =
        subgroup_test_det(relabeled, make_subset(relabeled, mapped));
    CHECK(a.verdict == b.verdict);
  }
}

TEST_CASE("subgroup_test_det size cap") {
  // |S| = 13 or 14 would need catalog entries beyond order 12.
  const FiniteGroup z14 = cyclic(14);
  CHECK(kind_of([&] { subgroup_test_det(z14, full_subset(z14)); }) ==
        ErrorKind::OrderCapExceeded);
}

TEST_CASE("classify_bijection") {
  const FiniteGroup s3 = symmetric(3);
  const FiniteGroup z4 = cyclic(4);

  ElementBijection id_s3{&s3, full_subset(s3), {0, 1, 2, 3, 4, 5}};
  CHECK(classify_bijection(s3, id_s3, s3) == BijectionClass::Isomorphism);

  ElementBijection id_z4{&z4, full_subset(z4), {0, 1, 2, 3}};
  CHECK(classify_bijection(z4, id_z4, z4) == BijectionClass::Both);

  // Inversion on a nonabelian group is an anti-isomorphism, never an
  // isomorphism.
  ElementBijection inv_s3{&s3, full_subset(s3), s3.inverses};
  CHECK(classify_bijection(s3, inv_s3, s3) == BijectionClass::AntiIsomorphism);

  // Inversion preserves the group determinant.
  std::map<int, int> inv_map;
  for (int i = 0; i < 6; ++i) inv_map[i] = s3.inv(i);
  const Polynomial theta = gen_group_det(s3, full_subset(s3));
  CHECK(theta.rename(inv_map) == theta);

  // A bijection that scrambles products is neither.
  ElementBijection broken{&s3, full_subset(s3), {0, 3, 1, 2, 5, 4}};
  CHECK(classify_bijection(s3, broken, s3) == BijectionClass::Neither);
}

TEST_CASE("monomial lemmas on Z3") {
  const FiniteGroup z3 = cyclic(3);
  const MonomialLemmaReport report = verify_monomial_lemmas(z3);
  CHECK(report.passed);
  CHECK(report.mode == LemmaMode::FullGroup);
  bool saw_all_equal = false;
  for (const auto& c : report.checks) {
    if (c.clause == 4 && c.case_label == "all-equal") {
      saw_all_equal = true;
      CHECK(c.expected == 1);  // n/3 with n = 3
      CHECK(c.observed == 1);
    }
  }
  CHECK(saw_all_equal);
}

TEST_CASE("monomial lemmas on S3 include the n/3 case") {
  const FiniteGroup s3 = symmetric(3);
  const MonomialLemmaReport report = verify_monomial_lemmas(s3);
  CHECK(report.passed);

  int all_equal = 0, noncommuting = 0, commuting = 0, two_equal = 0;
  for (const auto& c : report.checks) {
    if (c.clause != 4) continue;
    if (c.case_label == "all-equal") {
      ++all_equal;
      CHECK(c.expected == 2);  // n/3 with n = 6
      CHECK(c.observed == 2);
    } else if (c.case_label == "distinct-noncommuting") {
      ++noncommuting;
      CHECK(c.observed == 6);
    } else if (c.case_label == "distinct-commuting") {
      ++commuting;
    } else if (c.case_label == "two-equal") {
      ++two_equal;
    }
  }
  CHECK(all_equal == 2);      // the two 3-cycles
  CHECK(noncommuting > 0);
  // S3 has no three distinct pairwise-commuting non-identity elements with
  // product e, and no order-4 element, so these cases are vacuous here.
  CHECK(commuting == 0);
  CHECK(two_equal == 0);

  // Direct check of the n/3 coefficient: x_e^3 x_a^3 for a 3-cycle.
  const Polynomial theta = gen_group_det(s3, full_subset(s3));
  CHECK(theta.coefficient_of(
            Monomial::from_exponents({{0, 3}, {3, 3}})) == 2);
}

TEST_CASE("monomial lemmas cover the 2n and two-equal cases elsewhere") {
  // Z6: 1 + 2 + 3 = 0 mod 6 gives a distinct commuting triple; expect 2n.
  const FiniteGroup z6 = cyclic(6);
  const MonomialLemmaReport r6 = verify_monomial_lemmas(z6);
  CHECK(r6.passed);
  bool saw_2n = false;
  for (const auto& c : r6.checks)
    if (c.clause == 4 && c.case_label == "distinct-commuting") {
      saw_2n = true;
      CHECK(c.expected == 12);
      CHECK(c.observed == 12);
    }
  CHECK(saw_2n);

  // Z4: (a, a, a^2) with a of order 4 is the two-equal case; expect n.
  const FiniteGroup z4 = cyclic(4);
  const MonomialLemmaReport r4 = verify_monomial_lemmas(z4);
  CHECK(r4.passed);
  bool saw_two_equal = false;
  for (const auto& c : r4.checks)
    if (c.clause == 4 && c.case_label == "two-equal") {
      saw_two_equal = true;
      CHECK(c.expected == 4);
      CHECK(c.observed == 4);
    }
  CHECK(saw_two_equal);
}

TEST_CASE("monomial lemmas in subset mode") {
  const FiniteGroup s3 = symmetric(3);
  for (const auto& s : enumerate_subgroups(s3)) {
    const MonomialLemmaReport report = verify_monomial_lemmas(s3, s);
    CHECK(report.mode == LemmaMode::SubsetMode);
    CHECK(report.passed);
  }
  CHECK(kind_of([&] {
          verify_monomial_lemmas(s3, make_subset(s3, {1, 2}));
        }) == ErrorKind::InvalidSpec);
}

TEST_CASE("group_algebra_inverse fixtures") {
  const FiniteGroup z3 = cyclic(3);
  const auto identity_only = group_algebra_inverse(z3, {1, 0, 0});
  CHECK_FALSE(identity_only.singular);
  CHECK(identity_only.coefficients ==
        std::vector<BigRational>{1, 0, 0});

  const auto ones = group_algebra_inverse(z3, {1, 1, 1});
  CHECK(ones.singular);
  CHECK(ones.coefficients.empty());

  const FiniteGroup z2 = cyclic(2);
  const auto inv = group_algebra_inverse(z2, {3, 2});
  REQUIRE_FALSE(inv.singular);
  CHECK(inv.coefficients[0] == BigRational(3, 5));
  CHECK(inv.coefficients[1] == BigRational(-2, 5));

  CHECK(kind_of([&] { group_algebra_inverse(z2, {1}); }) ==
        ErrorKind::InvalidSpec);
}

TEST_CASE("singular exactly when the determinant vanishes") {
  std::uint64_t state = 4242;
  auto next = [&] { return state = splitmix64(state); };
  for (int order = 1; order <= 6; ++order) {
    for (const auto& g : catalog(order)) {
      const Polynomial theta = gen_group_det(g, full_subset(g));
      for (int trial = 0; trial < 15; ++trial) {
        std::vector<BigRational> coeffs(g.order);
        BigInt denominator_product = 1;
        for (int v = 0; v < g.order; ++v) {
          const int num = static_cast<int>(next() % 9) - 4;
          const int den = 1 + static_cast<int>(next() % 4);
          coeffs[v] = BigRational(num, den);
        }
        // Clear denominators: theta is homogeneous, so scaling by a
        // positive constant cannot change vanishing.
        BigInt lcm_all = 1;
        for (const auto& c : coeffs)
          lcm_all = boost::multiprecision::lcm(lcm_all, denominator(c));
        std::map<int, BigInt> point;
        for (int v = 0; v < g.order; ++v)
          point[v] = static_cast<BigInt>(coeffs[v] * lcm_all);
        const bool vanishes = theta.evaluate(point) == 0;
        const auto result = group_algebra_inverse(g, coeffs);
        CHECK(result.singular == vanishes);
        if (!result.singular) {
          // Convolution really is the identity, both ways.
          for (int k = 0; k < g.order; ++k) {
            BigRational left = 0, right = 0;
            for (int a = 0; a < g.order; ++a)
              for (int b = 0; b < g.order; ++b)
                if (g.mul(a, b) == k) {
                  left += coeffs[a] * result.coefficients[b];
                  right += result.coefficients[a] * coeffs[b];
                }
            CHECK(left == (k == g.identity ? 1 : 0));
            CHECK(right == (k == g.identity ? 1 : 0));
          }
        }
      }

      // Crafted singular points.
      if (g.order >= 2) {
        std::vector<BigRational> all_ones(g.order, 1);
        CHECK(group_algebra_inverse(g, all_ones).singular);
        std::vector<BigRational> uniform(g.order, BigRational(1, g.order));
        CHECK(group_algebra_inverse(g, uniform).singular);
      }
      for (int v = 0; v < g.order; ++v) {
        if (g.element_order(v) == 2) {
          // e + g with g^2 = e is a zero divisor: (e+g)(e-g) = 0.
          std::vector<BigRational> coeffs(g.order, 0);
          coeffs[g.identity] = 1;
          coeffs[v] = 1;
          CHECK(group_algebra_inverse(g, coeffs).singular);
          break;
        }
      }
    }
  }
}
