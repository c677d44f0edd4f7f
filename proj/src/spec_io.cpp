#include "gdet/spec_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "gdet/errors.hpp"

namespace gdet {

DetOptions RunConfig::det_options() const {
  return DetOptions{.order_cap = order_cap,
                    .full_symbolic_cap = full_symbolic_cap,
                    .term_budget = term_budget,
                    .threads = threads};
}

CriterionOptions RunConfig::criterion_options() const {
  CriterionOptions opts;
  opts.det = det_options();
  // Internal determinants (candidate groups, subgroup blocks) are bounded
  // by the catalog range and the term budget; the dense-determinant cap
  // only gates the direct det/gendet surfaces.
  opts.det.full_symbolic_cap = order_cap;
  opts.seed = seed;
  opts.prime = prime;
  opts.order_prune = order_prune;
  return opts;
}

ReconstructOptions RunConfig::reconstruct_options() const {
  ReconstructOptions opts;
  opts.det = det_options();
  opts.det.full_symbolic_cap = order_cap;
  opts.seed = seed;
  opts.prime = prime;
  return opts;
}

RunConfig run_config_from_json(const Json& j, RunConfig base) {
  if (!j.is_object()) fail(ErrorKind::InvalidSpec, "config must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "order_cap")
      base.order_cap = value.get<int>();
    else if (key == "full_symbolic_cap")
      base.full_symbolic_cap = value.get<int>();
    else if (key == "term_budget")
      base.term_budget = value.get<std::size_t>();
    else if (key == "seed")
      base.seed = value.get<std::uint64_t>();
    else if (key == "prime")
      base.prime = value.get<std::uint64_t>();
    else if (key == "threads")
      base.threads = value.get<int>();
    else if (key == "order_prune")
      base.order_prune = value.get<bool>();
    else if (key == "format")
      base.json_output = value.get<std::string>() == "json";
    else
      fail(ErrorKind::InvalidSpec, "unknown config key: " + key);
  }
  if (base.order_cap < 1 || base.term_budget < 1 || base.threads < 1)
    fail(ErrorKind::InvalidSpec, "caps and budgets must be positive");
  return base;
}

namespace {

FiniteGroup group_from_json(const Json& j, const RunConfig& config);

FiniteGroup group_from_shorthand(std::string name, const RunConfig& config) {
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  auto numeric_suffix = [&](const std::string& prefix) -> int {
    if (name.size() <= prefix.size() || name.rfind(prefix, 0) != 0) return -1;
    const std::string digits = name.substr(prefix.size());
    if (!std::all_of(digits.begin(), digits.end(),
                     [](unsigned char c) { return std::isdigit(c); }))
      return -1;
    return std::stoi(digits);
  };

  if (name == "q8" || name == "quaternion8") return quaternion8(config.order_cap);
  if (name == "klein4" || name == "v4")
    return direct_product(cyclic(2), cyclic(2), config.order_cap);
  if (name == "a4") return alternating4(config.order_cap);
  if (name == "dic3") return dicyclic3(config.order_cap);
  for (const char* prefix : {"cyclic", "z", "c"}) {
    const int n = numeric_suffix(prefix);
    if (n >= 0) return cyclic(n, config.order_cap);
  }
  for (const char* prefix : {"dihedral", "d"}) {
    const int n = numeric_suffix(prefix);
    if (n >= 0) return dihedral(n, config.order_cap);
  }
  for (const char* prefix : {"symmetric", "s"}) {
    const int n = numeric_suffix(prefix);
    if (n >= 0) return symmetric(n, config.order_cap);
  }
  fail(ErrorKind::InvalidSpec, "unknown group shorthand: " + name);
}

FiniteGroup group_from_json(const Json& j, const RunConfig& config) {
  if (j.is_string()) return group_from_shorthand(j.get<std::string>(), config);
  if (!j.is_object() || !j.contains("type"))
    fail(ErrorKind::InvalidSpec, "group spec needs a \"type\" field");
  const std::string type = j.at("type").get<std::string>();
  if (type == "cyclic") return cyclic(j.at("n").get<int>(), config.order_cap);
  if (type == "dihedral")
    return dihedral(j.at("n").get<int>(), config.order_cap);
  if (type == "symmetric")
    return symmetric(j.at("n").get<int>(), config.order_cap);
  if (type == "quaternion8") return quaternion8(config.order_cap);
  if (type == "product") {
    const auto& factors = j.at("factors");
    if (!factors.is_array() || factors.empty())
      fail(ErrorKind::InvalidSpec, "product needs a nonempty factor list");
    FiniteGroup acc = group_from_json(factors[0], config);
    for (size_t i = 1; i < factors.size(); ++i)
      acc = direct_product(acc, group_from_json(factors[i], config),
                           config.order_cap);
    return acc;
  }
  if (type == "table") {
    const auto table = j.at("table").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(table.size()) > config.order_cap)
      fail(ErrorKind::OrderCapExceeded,
           "table order " + std::to_string(table.size()) + " above the cap");
    return from_cayley_table(table, "table");
  }
  if (type == "catalog") {
    const int order = j.at("order").get<int>();
    const int index = j.at("index").get<int>();
    const auto& groups = catalog(order);
    if (index < 0 || index >= static_cast<int>(groups.size()))
      fail(ErrorKind::InvalidSpec,
           "catalog index " + std::to_string(index) + " out of range");
    return groups[index];
  }
  fail(ErrorKind::InvalidSpec, "unknown group spec type: " + type);
}

Json parse_json(const std::string& text, const std::string& what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded())
    fail(ErrorKind::InvalidSpec, "invalid JSON in " + what);
  return j;
}

}  // namespace

FiniteGroup parse_group_spec(const std::string& text,
                             const RunConfig& config) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos &&
      (text[first] == '{' || text[first] == '"'))
    return group_from_json(parse_json(text, "group spec"), config);
  return group_from_shorthand(text, config);
}

Subset parse_subset_spec(const std::string& text, const FiniteGroup& g) {
  const Json j = parse_json(text, "subset spec");
  if (!j.is_object() || !j.contains("members"))
    fail(ErrorKind::InvalidSpec, "subset spec needs a \"members\" array");
  return make_subset(g, j.at("members").get<std::vector<int>>());
}

Json group_to_json(const FiniteGroup& g) {
  return Json{{"name", g.name},
              {"order", g.order},
              {"identity", g.identity},
              {"abelian", g.is_abelian()},
              {"table", g.table},
              {"inverses", g.inverses}};
}

Json polynomial_to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.sorted_terms()) {
    Json exps = Json::object();
    for (const auto& [var, exp] : m.exponents())
      exps[std::to_string(var)] = exp;
    terms.push_back(Json{{"coeff", c.str()}, {"exps", exps}});
  }
  return terms;
}

Polynomial polynomial_from_json(const Json& j) {
  if (!j.is_array())
    fail(ErrorKind::InvalidSpec, "polynomial JSON must be an array of terms");
  Polynomial p;
  for (const auto& term : j) {
    const BigInt coeff(term.at("coeff").get<std::string>());
    std::vector<Monomial::VarExp> pairs;
    for (const auto& [var, exp] : term.at("exps").items())
      pairs.emplace_back(std::stoi(var), exp.get<int>());
    p.add_term(Monomial::from_exponents(std::move(pairs)), coeff);
  }
  return p;
}

Json criterion_report_to_json(const CriterionReport& report) {
  Json j;
  j["verdict"] = verdict_name(report.verdict);
  j["hypothesis_failure"] =
      report.hypothesis_failure.has_value()
          ? Json(hypothesis_failure_name(*report.hypothesis_failure))
          : Json(nullptr);
  if (report.witness.has_value()) {
    j["witness"] = Json{{"catalog_order", report.witness->catalog_order},
                        {"catalog_index", report.witness->catalog_index},
                        {"catalog_name", report.witness->catalog_name},
                        {"phi", report.witness->phi.map}};
  } else {
    j["witness"] = nullptr;
  }
  j["phi_class"] = report.phi_class.has_value()
                       ? Json(bijection_class_name(*report.phi_class))
                       : Json(nullptr);
  j["search_stats"] =
      Json{{"candidates_examined", report.search_stats.candidates_examined},
           {"fingerprint_rejections",
            report.search_stats.fingerprint_rejections},
           {"symbolic_confirmations",
            report.search_stats.symbolic_confirmations}};
  return j;
}

std::string criterion_report_to_text(const CriterionReport& report) {
  std::ostringstream out;
  out << "verdict: " << verdict_name(report.verdict) << "\n";
  if (report.hypothesis_failure.has_value())
    out << "hypothesis failure: "
        << hypothesis_failure_name(*report.hypothesis_failure) << "\n";
  if (report.witness.has_value()) {
    out << "witness: H = " << report.witness->catalog_name << " (catalog "
        << report.witness->catalog_order << "."
        << report.witness->catalog_index << ")\n";
    out << "phi:";
    for (size_t h = 0; h < report.witness->phi.map.size(); ++h)
      out << " " << h << "->" << report.witness->phi.map[h];
    out << "\n";
  }
  if (report.phi_class.has_value())
    out << "phi class: " << bijection_class_name(*report.phi_class) << "\n";
  out << "search: " << report.search_stats.candidates_examined
      << " candidates, " << report.search_stats.fingerprint_rejections
      << " fingerprint rejections, "
      << report.search_stats.symbolic_confirmations
      << " symbolic confirmations\n";
  return out.str();
}

Json lemma_report_to_json(const MonomialLemmaReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back(
        Json{{"clause", c.clause},
             {"case", c.case_label},
             {"subject", c.subject},
             {"expected", c.requires_exact ? Json(c.expected.str())
                                           : Json("nonzero")},
             {"observed", c.observed.str()},
             {"pass", c.pass}});
  }
  return Json{{"group", report.group_name},
              {"mode",
               report.mode == LemmaMode::FullGroup ? "full" : "subset"},
              {"passed", report.passed},
              {"checks", checks}};
}

std::string lemma_report_to_text(const MonomialLemmaReport& report) {
  std::ostringstream out;
  out << "group: " << report.group_name << "\n";
  out << "mode: "
      << (report.mode == LemmaMode::FullGroup ? "full" : "subset") << "\n";
  int per_clause[5] = {0, 0, 0, 0, 0};
  for (const auto& c : report.checks) ++per_clause[c.clause];
  out << "checks:";
  for (int clause = 1; clause <= 4; ++clause)
    out << " clause" << clause << "=" << per_clause[clause];
  out << "\n";
  for (const auto& c : report.checks) {
    if (c.pass) continue;
    out << "FAIL clause " << c.clause << " [" << c.case_label << "] "
        << c.subject << ": observed " << c.observed.str();
    if (c.requires_exact) out << ", expected " << c.expected.str();
    out << "\n";
  }
  out << "passed: " << (report.passed ? "yes" : "no") << "\n";
  return out.str();
}

namespace {

std::string catalog_match_name(const FiniteGroup& g) {
  if (g.order > kCatalogMaxOrder) return "";
  for (const auto& candidate : catalog(g.order))
    if (is_isomorphic(g, candidate)) return candidate.name;
  return "";
}

}  // namespace

Json reconstruction_to_json(const ReconstructedGroup& rec) {
  const std::string match = catalog_match_name(rec.group);
  return Json{{"order", rec.group.order},
              {"labels", rec.labels},
              {"table", rec.group.table},
              {"isomorphic_to", match.empty() ? Json(nullptr) : Json(match)}};
}

std::string reconstruction_to_text(const ReconstructedGroup& rec) {
  std::ostringstream out;
  out << "order: " << rec.group.order << "\n";
  out << "labels:";
  for (int label : rec.labels) out << " x" << label;
  out << "\n";
  out << "table:\n";
  for (const auto& row : rec.group.table) {
    for (size_t j = 0; j < row.size(); ++j)
      out << (j == 0 ? "" : " ") << row[j];
    out << "\n";
  }
  const std::string match = catalog_match_name(rec.group);
  if (!match.empty()) out << "isomorphic to: " << match << "\n";
  return out.str();
}

std::vector<BigRational> parse_rational_list(const std::string& text,
                                             int expected_size) {
  const Json j = parse_json(text, "coefficient list");
  if (!j.is_array())
    fail(ErrorKind::InvalidSpec, "coefficient list must be a JSON array");
  if (static_cast<int>(j.size()) != expected_size)
    fail(ErrorKind::InvalidSpec,
         "expected " + std::to_string(expected_size) + " coefficients, got " +
             std::to_string(j.size()));
  std::vector<BigRational> out;
  out.reserve(j.size());
  for (const auto& entry : j) {
    if (entry.is_number_integer()) {
      out.emplace_back(entry.get<long long>());
    } else if (entry.is_string()) {
      try {
        out.emplace_back(BigRational(entry.get<std::string>()));
      } catch (const std::exception&) {
        fail(ErrorKind::InvalidSpec,
             "bad rational: " + entry.get<std::string>());
      }
    } else {
      fail(ErrorKind::InvalidSpec,
           "coefficients must be integers or \"p/q\" strings");
    }
  }
  return out;
}

std::string rational_to_string(const BigRational& r) {
  std::ostringstream out;
  out << r;
  return out.str();
}

}  // namespace gdet
