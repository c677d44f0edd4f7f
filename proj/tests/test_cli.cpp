#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "gdet/group.hpp"
#include "gdet/group_matrix.hpp"
#include "gdet/polynomial.hpp"
#include "gdet/spec_io.hpp"

using namespace gdet;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// Runs the gdet binary (path from GDET_BIN) with the given arguments.
RunResult run(const std::string& args) {
  const char* bin = std::getenv("GDET_BIN");
  REQUIRE(bin != nullptr);
  const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0)
    result.out.append(buffer, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string temp_path(const std::string& name) {
  return std::string("/tmp/gdet_test_") + name;
}

}  // namespace

TEST_CASE("det emits canonical polynomials") {
  const RunResult z3 = run("det cyclic3");
  CHECK(z3.exit_code == 0);
  CHECK(z3.out == "x0^3 - 3*x0*x1*x2 + x1^3 + x2^3\n");

  const RunResult z1 = run("det '{\"type\":\"cyclic\",\"n\":1}'");
  CHECK(z1.exit_code == 0);
  CHECK(z1.out == "x0\n");

  // Shorthand and JSON spell the same group.
  CHECK(run("det z5").out == run("det '{\"type\":\"cyclic\",\"n\":5}'").out);

  // Catalog references and explicit tables are group specs too.
  CHECK(run("det '{\"type\":\"catalog\",\"order\":8,\"index\":4}'").out ==
        run("det q8").out);
  CHECK(run("det '{\"type\":\"table\",\"table\":[[0,1],[1,0]]}'").out ==
        run("det z2").out);
  CHECK(run("det '{\"type\":\"catalog\",\"order\":8,\"index\":9}'").exit_code ==
        2);
  CHECK(run("det '{\"type\":\"table\",\"table\":[[0,1],[1,1]]}'").exit_code ==
        2);

  // Klein four as a product spec equals the expanded four-form product.
  const RunResult klein = run(
      "det '{\"type\":\"product\",\"factors\":[{\"type\":\"cyclic\",\"n\":2},"
      "{\"type\":\"cyclic\",\"n\":2}]}'");
  CHECK(klein.exit_code == 0);
  auto x = [](int v) { return Polynomial::variable(v); };
  const Polynomial product = (x(0) + x(1) + x(2) + x(3)) *
                             (x(0) + x(1) - x(2) - x(3)) *
                             (x(0) - x(1) + x(2) - x(3)) *
                             (x(0) - x(1) - x(2) + x(3));
  CHECK(klein.out == product.to_string() + "\n");
}

TEST_CASE("gendet") {
  const RunResult r = run("gendet cyclic3 '{\"members\":[0]}'");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "x0^3\n");

  const RunResult empty = run("gendet cyclic3 '{\"members\":[]}'");
  CHECK(empty.exit_code == 0);
  CHECK(empty.out == "0\n");
}

TEST_CASE("subtest verdicts and exit codes") {
  const RunResult yes = run("subtest cyclic6 '{\"members\":[0,3]}'");
  CHECK(yes.exit_code == 0);
  CHECK(yes.out.find("verdict: Subgroup") != std::string::npos);
  CHECK(yes.out.find("H = Z2") != std::string::npos);

  const RunResult no = run("subtest cyclic6 '{\"members\":[0,1]}'");
  CHECK(no.exit_code == 1);
  CHECK(no.out.find("verdict: NotSubgroup") != std::string::npos);

  const RunResult hyp = run("subtest cyclic6 '{\"members\":[1,4]}'");
  CHECK(hyp.exit_code == 1);
  CHECK(hyp.out.find("IdentityMissing") != std::string::npos);

  const RunResult js = run("--json subtest s3 '{\"members\":[0,3,4]}'");
  CHECK(js.exit_code == 0);
  const Json parsed = Json::parse(js.out);
  CHECK(parsed["verdict"] == "Subgroup");
  CHECK(parsed["witness"]["catalog_name"] == "Z3");
  CHECK(parsed["phi_class"] == "Both");
}

TEST_CASE("lemmas") {
  const RunResult full = run("lemmas s3");
  CHECK(full.exit_code == 0);
  CHECK(full.out.find("passed: yes") != std::string::npos);

  const RunResult sub = run("lemmas s3 '{\"members\":[0,3,4]}'");
  CHECK(sub.exit_code == 0);
  CHECK(sub.out.find("mode: subset") != std::string::npos);

  const RunResult js = run("--json lemmas cyclic3");
  const Json parsed = Json::parse(js.out);
  CHECK(parsed["passed"] == true);
  CHECK(parsed["group"] == "Z3");
}

TEST_CASE("inverse") {
  const RunResult sing = run("inverse cyclic3 '[1,1,1]'");
  CHECK(sing.exit_code == 1);
  CHECK(sing.out == "singular\n");

  const RunResult inv = run("inverse z2 '[3,2]'");
  CHECK(inv.exit_code == 0);
  CHECK(inv.out == "3/5 -2/5\n");

  const RunResult rational = run("inverse z2 '[\"1/2\",\"1/3\"]'");
  CHECK(rational.exit_code == 0);

  const RunResult js = run("--json inverse cyclic3 '[1,1,1]'");
  const Json parsed = Json::parse(js.out);
  CHECK(parsed["singular"] == true);

  CHECK(run("inverse z2 '[1]'").exit_code == 2);
  CHECK(run("inverse z2 '[1,\"x\"]'").exit_code == 2);
}

TEST_CASE("catalog listing") {
  const RunResult r = run("catalog 8");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("order 8: 5 groups") != std::string::npos);
  CHECK(r.out.find("Q8") != std::string::npos);

  const RunResult js = run("--json catalog 4");
  const Json parsed = Json::parse(js.out);
  CHECK(parsed.size() == 2);
  CHECK(parsed[0]["order"] == 4);
  CHECK(parsed[0].contains("table"));

  CHECK(run("catalog 13").exit_code == 3);
}

TEST_CASE("reconstruct round trip through files") {
  const std::string path = temp_path("s3_theta.txt");
  const RunResult det = run("det s3");
  REQUIRE(det.exit_code == 0);
  {
    std::ofstream out(path);
    out << det.out;
  }
  const RunResult rec = run("reconstruct " + path + " 0");
  CHECK(rec.exit_code == 0);
  CHECK(rec.out.find("isomorphic to: S3") != std::string::npos);

  // JSON polynomial input works too.
  const std::string jpath = temp_path("z4_theta.json");
  const RunResult jdet = run("--json det z4");
  REQUIRE(jdet.exit_code == 0);
  {
    std::ofstream out(jpath);
    out << jdet.out;
  }
  const RunResult jrec = run("--json reconstruct " + jpath + " 0");
  CHECK(jrec.exit_code == 0);
  const Json parsed = Json::parse(jrec.out);
  CHECK(parsed["isomorphic_to"] == "Z4");
  CHECK(parsed["order"] == 4);

  // A perturbed determinant is rejected with the negative exit code.
  const Polynomial theta = gen_group_det(
      symmetric(3), full_subset(symmetric(3)));
  Polynomial bad = theta;
  bad.add_term(Monomial::from_exponents({{1, 5}, {2, 1}}), 1);
  const std::string bpath = temp_path("bad_theta.txt");
  {
    std::ofstream out(bpath);
    out << bad.to_string() << "\n";
  }
  CHECK(run("reconstruct " + bpath + " 0").exit_code == 1);

  CHECK(run("reconstruct /nonexistent/path 0").exit_code == 2);
}

TEST_CASE("error exit codes") {
  CHECK(run("det nosuchgroup").exit_code == 2);
  CHECK(run("det '{\"type\":\"cyclic\"}'").exit_code == 2);
  CHECK(run("det '{bad json'").exit_code == 2);
  CHECK(run("gendet cyclic3 '{\"members\":[0,9]}'").exit_code == 2);
  CHECK(run("det").exit_code == 2);           // missing argument
  CHECK(run("nosuchcommand").exit_code == 2);
  CHECK(run("det z12").exit_code == 3);       // above the dense cap
  CHECK(run("--term-budget 10 det z6").exit_code == 3);
  CHECK(run("--order-cap 6 det z8").exit_code == 3);
  // Raising the cap admits larger dense determinants.
  CHECK(run("--order-cap 11 det z11").exit_code == 0);
}

TEST_CASE("byte-identical reruns") {
  for (const std::string cmd :
       {std::string("det q8"), std::string("--json subtest s3 '{\"members\":[0,1]}'"),
        std::string("--json det d4"), std::string("lemmas z4")}) {
    const RunResult a = run(cmd);
    const RunResult b = run(cmd);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
  }
  // Thread count must not affect output bytes.
  CHECK(run("--threads 4 det q8").out == run("det q8").out);
  // Different seeds change fingerprints, never answers.
  CHECK(run("--seed 7 subtest q8 '{\"members\":[0,4]}'").out ==
        run("subtest q8 '{\"members\":[0,4]}'").out);
  // Disabling the order prune widens the search without changing verdicts.
  const RunResult pruned = run("--json subtest z6 '{\"members\":[0,1]}'");
  const RunResult wide = run("--json --no-order-prune subtest z6 '{\"members\":[0,1]}'");
  CHECK(pruned.exit_code == 1);
  CHECK(wide.exit_code == 1);
  CHECK(Json::parse(pruned.out)["verdict"] == Json::parse(wide.out)["verdict"]);
  CHECK(Json::parse(wide.out)["search_stats"]["candidates_examined"]
            .get<int>() >
        Json::parse(pruned.out)["search_stats"]["candidates_examined"]
            .get<int>());
}

TEST_CASE("config file via GDET_CONFIG") {
  const std::string path = temp_path("config.json");
  {
    std::ofstream out(path);
    out << R"({"format":"json","seed":3})";
  }
  const char* bin = std::getenv("GDET_BIN");
  REQUIRE(bin != nullptr);
  const std::string cmd = std::string("GDET_CONFIG=") + path + " " + bin +
                          " det cyclic3 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buffer[4096];
  size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0)
    out.append(buffer, n);
  const int status = pclose(pipe);
  CHECK(WEXITSTATUS(status) == 0);
  // Config switched the default format to JSON.
  const Json parsed = Json::parse(out);
  CHECK(parsed.is_array());
  CHECK(parsed.size() == 4);
}
