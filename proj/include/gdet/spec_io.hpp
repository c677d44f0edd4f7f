#ifndef GDET_SPEC_IO_HPP
#define GDET_SPEC_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "gdet/criterion.hpp"
#include "gdet/group.hpp"
#include "gdet/numeric.hpp"
#include "gdet/polynomial.hpp"
#include "gdet/reconstruct.hpp"

namespace gdet {

using Json = nlohmann::json;

struct RunConfig {
  int order_cap = kDefaultOrderCap;
  int full_symbolic_cap = 10;
  std::size_t term_budget = std::size_t(1) << 22;
  std::uint64_t seed = 0;
  std::uint64_t prime = kFingerprintPrime;
  int threads = 1;
  bool order_prune = true;
  bool json_output = false;

  DetOptions det_options() const;
  CriterionOptions criterion_options() const;
  ReconstructOptions reconstruct_options() const;
};

/// Overrides fields of `base` with whatever keys the JSON object carries.
RunConfig run_config_from_json(const Json& j, RunConfig base = {});

/// Accepts either a JSON group spec ({"type":"cyclic","n":3}, dihedral,
/// symmetric, quaternion8, product, table, catalog) or a shorthand name
/// (cyclic6, z6, c6, d4, s3, q8, klein4, a4, dic3).
FiniteGroup parse_group_spec(const std::string& text, const RunConfig& config);

/// {"members":[0,2,5]}
Subset parse_subset_spec(const std::string& text, const FiniteGroup& g);

Json group_to_json(const FiniteGroup& g);

Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);

Json criterion_report_to_json(const CriterionReport& report);
std::string criterion_report_to_text(const CriterionReport& report);

Json lemma_report_to_json(const MonomialLemmaReport& report);
std::string lemma_report_to_text(const MonomialLemmaReport& report);

/// Reconstruction output: table plus an isomorphism-class report against
/// the catalog when the order is within catalog range.
Json reconstruction_to_json(const ReconstructedGroup& rec);
std::string reconstruction_to_text(const ReconstructedGroup& rec);

std::vector<BigRational> parse_rational_list(const std::string& text,
                                             int expected_size);
std::string rational_to_string(const BigRational& r);

}  // namespace gdet

#endif  // GDET_SPEC_IO_HPP
