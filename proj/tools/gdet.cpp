#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gdet/errors.hpp"
#include "gdet/spec_io.hpp"

namespace {

using namespace gdet;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitSpecError = 2;
constexpr int kExitResource = 3;
constexpr int kExitInternal = 4;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoConsistentTable:
    case ErrorKind::VerificationFailed:
      return kExitNegative;
    case ErrorKind::OrderCapExceeded:
    case ErrorKind::ResourceBudgetExceeded:
      return kExitResource;
    case ErrorKind::Internal:
    case ErrorKind::SingularPivotRetry:
      return kExitInternal;
    default:
      return kExitSpecError;
  }
}

std::string read_polynomial_input(const std::string& path) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidSpec, "cannot open file: " + path);
    buffer << in.rdbuf();
  }
  return buffer.str();
}

Polynomial parse_polynomial_input(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    fail(ErrorKind::InvalidSpec, "empty polynomial input");
  if (text[first] == '[')
    return polynomial_from_json(Json::parse(text));
  return Polynomial::parse(text);
}

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

struct Cli {
  RunConfig config;
  std::string group_spec;
  std::string subset_spec;
  std::string poly_path;
  std::string coeff_list;
  int identity_var = 0;
  int catalog_order = 0;

  int run_det(bool with_subset) {
    const FiniteGroup g = parse_group_spec(group_spec, config);
    const Subset s = with_subset ? parse_subset_spec(subset_spec, g)
                                 : full_subset(g);
    const Polynomial theta = gen_group_det(g, s, config.det_options());
    if (config.json_output)
      emit(polynomial_to_json(theta));
    else
      std::cout << theta.to_string() << "\n";
    return kExitOk;
  }

  int run_subtest() {
    const FiniteGroup g = parse_group_spec(group_spec, config);
    const Subset s = parse_subset_spec(subset_spec, g);
    const CriterionReport report =
        subgroup_test_det(g, s, config.criterion_options());
    if (config.json_output)
      emit(criterion_report_to_json(report));
    else
      std::cout << criterion_report_to_text(report);
    return report.verdict == Verdict::Subgroup ? kExitOk : kExitNegative;
  }

  int run_lemmas() {
    const FiniteGroup g = parse_group_spec(group_spec, config);
    std::optional<Subset> subset;
    if (!subset_spec.empty()) subset = parse_subset_spec(subset_spec, g);
    const MonomialLemmaReport report =
        verify_monomial_lemmas(g, subset, config.criterion_options());
    if (config.json_output)
      emit(lemma_report_to_json(report));
    else
      std::cout << lemma_report_to_text(report);
    return report.passed ? kExitOk : kExitNegative;
  }

  int run_reconstruct() {
    const Polynomial theta =
        parse_polynomial_input(read_polynomial_input(poly_path));
    const ReconstructedGroup rec =
        reconstruct_group(theta, identity_var, config.reconstruct_options());
    if (config.json_output)
      emit(reconstruction_to_json(rec));
    else
      std::cout << reconstruction_to_text(rec);
    return kExitOk;
  }

  int run_inverse() {
    const FiniteGroup g = parse_group_spec(group_spec, config);
    const auto coeffs = parse_rational_list(coeff_list, g.order);
    const GroupAlgebraInverse result = group_algebra_inverse(g, coeffs);
    if (config.json_output) {
      Json j;
      j["singular"] = result.singular;
      Json list = Json::array();
      for (const auto& c : result.coefficients)
        list.push_back(rational_to_string(c));
      j["coefficients"] = result.singular ? Json(nullptr) : list;
      emit(j);
    } else if (result.singular) {
      std::cout << "singular\n";
    } else {
      for (size_t i = 0; i < result.coefficients.size(); ++i)
        std::cout << (i == 0 ? "" : " ")
                  << rational_to_string(result.coefficients[i]);
      std::cout << "\n";
    }
    return result.singular ? kExitNegative : kExitOk;
  }

  int run_catalog() {
    const auto& groups = catalog(catalog_order);
    if (config.json_output) {
      Json j = Json::array();
      for (size_t i = 0; i < groups.size(); ++i) {
        Json entry = group_to_json(groups[i]);
        entry["index"] = i;
        j.push_back(std::move(entry));
      }
      emit(j);
    } else {
      std::cout << "order " << catalog_order << ": " << groups.size()
                << (groups.size() == 1 ? " group\n" : " groups\n");
      for (size_t i = 0; i < groups.size(); ++i)
        std::cout << "  index " << i << ": " << groups[i].name
                  << (groups[i].is_abelian() ? " (abelian)" : "") << "\n";
    }
    return kExitOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "gdet - exact group determinants, the determinant subgroup test,\n"
      "monomial coefficient checks, group-algebra inversion, and\n"
      "multiplication-table reconstruction for small finite groups"};
  app.require_subcommand(1);

  Cli cli;
  if (const char* env = std::getenv("GDET_CONFIG")) {
    try {
      std::ifstream in(env);
      if (!in) fail(ErrorKind::InvalidSpec,
                    std::string("cannot open GDET_CONFIG file: ") + env);
      Json j;
      in >> j;
      cli.config = run_config_from_json(j);
    } catch (const GdetError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return exit_code_for(e.kind());
    } catch (const std::exception& e) {
      std::cerr << "error: bad GDET_CONFIG: " << e.what() << "\n";
      return kExitSpecError;
    }
  }

  bool no_order_prune = false;
  bool order_cap_given = false;
  app.add_flag("--json", cli.config.json_output, "emit JSON");
  app.add_option("--seed", cli.config.seed,
                 "seed for all fingerprint evaluation points");
  app.add_option("--threads", cli.config.threads,
                 "worker threads for determinant expansion");
  app.add_option("--term-budget", cli.config.term_budget,
                 "maximum live polynomial terms during expansion");
  app.add_option("--order-cap", cli.config.order_cap, "group order cap")
      ->each([&](const std::string&) { order_cap_given = true; });
  app.add_flag("--no-order-prune", no_order_prune,
               "search all identity-preserving bijections, not just "
               "order-profile matches");

  const std::string group_help =
      "group spec: JSON or shorthand (cyclic6, z6, d4, s3, q8, klein4, a4, "
      "dic3)";
  const std::string subset_help = "subset spec: {\"members\":[0,2,5]}";

  auto* det = app.add_subcommand("det", "group determinant of G");
  det->add_option("group", cli.group_spec, group_help)->required();

  auto* gendet = app.add_subcommand(
      "gendet", "generalized group determinant of G restricted to S");
  gendet->add_option("group", cli.group_spec, group_help)->required();
  gendet->add_option("subset", cli.subset_spec, subset_help)->required();

  auto* subtest = app.add_subcommand(
      "subtest", "determinant-based subgroup test with witness search");
  subtest->add_option("group", cli.group_spec, group_help)->required();
  subtest->add_option("subset", cli.subset_spec, subset_help)->required();

  auto* lemmas = app.add_subcommand(
      "lemmas", "monomial occurrence and coefficient checks");
  lemmas->add_option("group", cli.group_spec, group_help)->required();
  lemmas->add_option("subset", cli.subset_spec, subset_help);

  auto* reconstruct = app.add_subcommand(
      "reconstruct", "recover a multiplication table from a determinant");
  reconstruct
      ->add_option("polynomial", cli.poly_path,
                   "file with the polynomial (text or JSON form), - for stdin")
      ->required();
  reconstruct
      ->add_option("identity", cli.identity_var,
                   "variable index of the identity element")
      ->required();

  auto* inverse = app.add_subcommand(
      "inverse", "invert an element of the rational group algebra");
  inverse->add_option("group", cli.group_spec, group_help)->required();
  inverse
      ->add_option("coeffs", cli.coeff_list,
                   "JSON array of coefficients (integers or \"p/q\")")
      ->required();

  auto* catalog_cmd =
      app.add_subcommand("catalog", "groups of a given order, one per class");
  catalog_cmd->add_option("order", cli.catalog_order, "group order (1..12)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitSpecError;
  }

  cli.config.order_prune = !no_order_prune;
  // Raising --order-cap is an explicit request for larger dense
  // determinants as well; the term budget still applies.
  if (order_cap_given)
    cli.config.full_symbolic_cap =
        std::max(cli.config.full_symbolic_cap, cli.config.order_cap);

  try {
    if (det->parsed()) return cli.run_det(false);
    if (gendet->parsed()) return cli.run_det(true);
    if (subtest->parsed()) return cli.run_subtest();
    if (lemmas->parsed()) return cli.run_lemmas();
    if (reconstruct->parsed()) return cli.run_reconstruct();
    if (inverse->parsed()) return cli.run_inverse();
    if (catalog_cmd->parsed()) return cli.run_catalog();
  } catch (const GdetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSpecError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitSpecError;
}
