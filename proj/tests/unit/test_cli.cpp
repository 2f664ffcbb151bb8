#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "index3d/cli.hpp"
#include "index3d/qseries.hpp"
#include "test_support.hpp"

using namespace index3d;
using index3d::testing::fixture_path;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

std::string fig8() { return fixture_path("fig8.json"); }

}  // namespace

TEST_CASE("tetrahedron index") {
  Run r = run({"tet-index", "0", "0", "--order", "10"});
  CHECK(r.status == 0);
  CHECK(r.out == "1*q^(0/2), -1*q^(2/2), -2*q^(4/2), -2*q^(6/2), -2*q^(8/2) + O(q^(10/2))\n");
  Run p = run({"tet-index", "0", "0", "--order", "10", "--pretty"});
  CHECK(p.out == "1 - q - 2*q^2 - 2*q^3 - 2*q^4 + O(q^5)\n");
  Run neg = run({"tet-index", "0", "-1", "--order", "6"});
  CHECK(neg.status == 0);
  CHECK(QSeries::parse(neg.out.substr(0, neg.out.size() - 1)).order() == HalfExp(6));
}

TEST_CASE("J index") {
  Run r = run({"j-index", "1", "1", "1", "--order", "6"});
  CHECK(r.status == 0);
  CHECK(r.out.rfind("-1*q^(-1/2), 1*q^(1/2)", 0) == 0);
}

TEST_CASE("bundled examples") {
  CHECK(run({"example", "fig8-kb", "--order", "18"}).out ==
        "-3*q^(2/2), -1*q^(4/2), 7*q^(6/2), 15*q^(8/2), 22*q^(10/2), 11*q^(12/2), -11*q^(14/2), -60*q^(16/2)"
        " + O(q^(18/2))\n");
  CHECK(run({"example", "fig8-kb-mirror", "--order", "18", "--pretty"}).out ==
        "1 - 3*q - 6*q^2 - q^3 + 9*q^4 + 28*q^5 + 39*q^6 + 45*q^7 + 20*q^8 + O(q^9)\n");
  Run kb2 = run({"example", "fig8-kb2", "--order", "8"});
  CHECK(kb2.status == 0);
  CHECK(run({"example", "fig8-kb2", "--order", "8"}).out == kb2.out);
  CHECK(run({"example", "nonsense", "--order", "8"}).status == 2);
}

TEST_CASE("JSON output parses back") {
  Run r = run({"index", fig8(), "--element", "Zpp1*Zpp2", "--order", "12", "--json"});
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  QSeries from_text = QSeries::parse(j.at("text").get<std::string>());
  std::vector<mpz_class> coeffs;
  for (const auto& c : j.at("coefficients")) coeffs.emplace_back(c.get<std::string>());
  QSeries from_fields = QSeries::from_coefficients(HalfExp(j.at("min_exp").get<std::int64_t>()), coeffs,
                                                   HalfExp(j.at("order").get<std::int64_t>()));
  CHECK(from_text == from_fields);
  CHECK(j.at("termination") == "heuristic");
  CHECK(j.at("contributing").get<int>() > 0);
  // identical invocations print identical bytes, with or without threads
  CHECK(run({"index", fig8(), "--element", "Zpp1*Zpp2", "--order", "12", "--json", "--threads", "3"}).out == r.out);
}

TEST_CASE("DGG charges on the command line") {
  Run whole = run({"dgg", fig8(), "-m", "0", "-e", "1", "--order", "12"});
  CHECK(whole.status == 0);
  Run half = run({"dgg", fig8(), "-m", "1/2", "-e", "0", "--order", "12"});
  CHECK(half.status == 0);
  Run bad = run({"dgg", fixture_path("fig8_3tet.json"), "-m", "1/2", "--order", "12"});
  CHECK(bad.status == 1);
  CHECK(bad.err.find("NonIntegralCharge") != std::string::npos);
  CHECK(run({"dgg", fig8(), "-m", "1/3", "--order", "12"}).status == 2);
}

TEST_CASE("relations, validation and moves") {
  Run rel = run({"check-relations", fig8(), "--monomial", "Zpp1*Zpp2", "--order", "12"});
  CHECK(rel.status == 0);
  CHECK(rel.out.find("FAIL") == std::string::npos);
  Run val = run({"validate", fig8()});
  CHECK(val.status == 0);
  CHECK(val.out.find("independent edges: 0") != std::string::npos);
  Run move = run({"pachner-check", fixture_path("fig8_move.json"), "--order", "8"});
  CHECK(move.status == 0);
}

TEST_CASE("usage and computation errors") {
  CHECK(run({}).status == 2);
  CHECK(run({"tet-index", "0", "0"}).status == 2);
  CHECK(run({"tet-index", "0", "0", "--order", "0"}).status == 2);
  CHECK(run({"index", "/nonexistent.json", "--order", "4"}).status == 2);
  Run parse = run({"index", fig8(), "--element", "Z9", "--order", "4"});
  CHECK(parse.status == 1);
  CHECK(parse.err.find("ParseError") != std::string::npos);
  Run radius = run({"index", fig8(), "--order", "60", "--max-radius", "1"});
  CHECK(radius.status == 1);
  CHECK(radius.err.find("RadiusExceeded") != std::string::npos);
  CHECK(run({"--help"}).status == 0);
}
