#include <doctest.h>

#include <array>
#include <optional>

#include "index3d/errors.hpp"
#include "index3d/fixtures.hpp"
#include "index3d/triangulation.hpp"
#include "test_support.hpp"

using namespace index3d;
using index3d::testing::fixture_path;
using index3d::testing::read_text;

namespace {

template <typename F>
std::optional<ErrorKind> kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

// Symplectic pairing written out from the per-tetrahedron block
// [[0,1,-1],[-1,0,1],[1,-1,0]], independent of the library.
std::int64_t pairing(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) {
  static constexpr int block[3][3] = {{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};
  std::int64_t s = 0;
  for (std::size_t t = 0; t < x.size() / 3; ++t)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s += x[3 * t + i] * block[i][j] * y[3 * t + j];
  return s;
}

// Expected first failure for a one-cusp triangulation given as raw rows.
std::optional<ErrorKind> expected_failure(const std::vector<std::vector<std::int64_t>>& edges,
                                          const std::vector<std::int64_t>& mer, const std::vector<std::int64_t>& lon) {
  for (const auto& e : edges)
    for (auto x : e)
      if (x < 0) return ErrorKind::NegativeQuadCount;
  std::vector<std::vector<std::int64_t>> rows = edges;
  rows.push_back(mer);
  rows.push_back(lon);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      std::int64_t want = (i == edges.size() && j == edges.size() + 1) ? -2 : 0;
      if (pairing(rows[i], rows[j]) != want) return ErrorKind::SymplecticViolation;
    }
  for (std::size_t c = 0; c < edges[0].size(); ++c) {
    std::int64_t s = 0;
    for (const auto& e : edges) s += e[c];
    if (s != 2) return ErrorKind::ColumnSumViolation;
  }
  return std::nullopt;
}

Triangulation with_rows(const std::vector<std::vector<std::int64_t>>& edges, const std::vector<std::int64_t>& mer,
                        const std::vector<std::int64_t>& lon) {
  Triangulation t = fixtures::figure_eight();
  t.independent_edges.clear();
  t.edge_rows.clear();
  for (const auto& e : edges) t.edge_rows.emplace_back(e);
  t.meridian_rows = {ExponentVector(mer)};
  t.longitude_rows = {ExponentVector(lon)};
  return t;
}

}  // namespace

TEST_CASE("figure-eight fixture validates") {
  Triangulation t = load_and_validate(fixture_path("fig8.json"));
  CHECK(t.num_tetrahedra == 2);
  CHECK(t.summation_rank() == 1);
  CHECK(t.independent_edges == std::vector<std::size_t>{0});
  CHECK(t.edge_rows[0] == ExponentVector{2, 1, 0, 2, 1, 0});
  CHECK(t.edge_rows[0] + t.edge_rows[1] ==
        2 * (ExponentVector::tetrahedron(2, 0) + ExponentVector::tetrahedron(2, 1)));
  CHECK(validate_report(t).ok());
  Triangulation e = fixtures::figure_eight();
  CHECK(triangulation_to_json(e) == triangulation_to_json(t));
  Triangulation three = load_and_validate(fixture_path("fig8_3tet.json"));
  CHECK(three.summation_rank() == 2);
  CHECK(three.independent_edges.size() == 2);
}

TEST_CASE("JSON round trip") {
  Triangulation t = fixtures::figure_eight();
  Triangulation back = parse_triangulation(triangulation_to_json(t));
  CHECK(back.edge_rows == t.edge_rows);
  CHECK(back.meridian_rows == t.meridian_rows);
  CHECK(back.longitude_rows == t.longitude_rows);
  CHECK(back.independent_edges == t.independent_edges);
}

TEST_CASE("spec corruption example") {
  Triangulation t = with_rows({{2, 1, 0, 2, 1, 0}, {0, 1, 2, 0, 2, 1}}, {1, 0, 0, 0, 0, -1}, {0, 0, 0, 2, 0, -2});
  CHECK(kind_of([&] { validate(t); }) == ErrorKind::SymplecticViolation);
  ValidationReport rep = validate_report(t);
  CHECK(rep.failures.front() == ErrorKind::SymplecticViolation);
}

TEST_CASE("every single-entry corruption is reported with the expected error") {
  const std::vector<std::vector<std::int64_t>> edges{{2, 1, 0, 2, 1, 0}, {0, 1, 2, 0, 1, 2}};
  const std::vector<std::int64_t> mer{1, 0, 0, 0, 0, -1}, lon{0, 0, 0, 2, 0, -2};
  int caught = 0, total = 0;
  for (int row = 0; row < 4; ++row) {
    for (std::size_t i = 0; i < 6; ++i) {
      for (int delta : {-1, 1, 2}) {
        auto e = edges;
        auto m = mer, l = lon;
        std::vector<std::int64_t>& target = row < 2 ? e[static_cast<std::size_t>(row)] : (row == 2 ? m : l);
        target[i] += delta;
        auto want = expected_failure(e, m, l);
        Triangulation t = with_rows(e, m, l);
        auto got = kind_of([&] { validate(t); });
        CAPTURE(row);
        CAPTURE(i);
        CAPTURE(delta);
        CHECK(got == want);
        ++total;
        if (got) ++caught;
      }
    }
  }
  // every corruption of the edge rows breaks a column sum at least
  CHECK(caught >= 36);
  CHECK(total == 72);
}

TEST_CASE("rank and hypothesis checks") {
  Triangulation t = fixtures::figure_eight();
  t.independent_edges = {0, 1};
  CHECK(kind_of([&] { validate(t); }) == ErrorKind::RankDeficient);
  t.independent_edges = {1};
  CHECK_FALSE(kind_of([&] { validate(t); }).has_value());
  t.independent_edges.clear();
  t.non_peripheral_z2_homology = true;
  CHECK(kind_of([&] { validate(t); }) == ErrorKind::HomologyHypothesisViolated);
  CHECK(rank_mod_tetrahedra(fixtures::figure_eight().edge_rows) == 1);
}

TEST_CASE("malformed documents") {
  CHECK(kind_of([] { parse_triangulation(""); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_triangulation("[]"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_triangulation("{\"num_tetrahedra\": 1}"); }) == ErrorKind::ParseError);
  std::string text = read_text(fixture_path("fig8.json"));
  std::string short_row = text;
  short_row.replace(short_row.find("[2, 1, 0, 2, 1, 0]"), 18, "[2, 1, 0, 2, 1]");
  CHECK(kind_of([&] { parse_triangulation(short_row); }) == ErrorKind::ParseError);
  std::string fractional = text;
  fractional.replace(fractional.find("[1, 0, 0, 0, 0, -1]"), 19, "[0.5, 0, 0, 0, 0, -1]");
  CHECK(kind_of([&] { parse_triangulation(fractional); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { read_triangulation("/nonexistent/file.json"); }) == ErrorKind::ParseError);
}

TEST_CASE("edge combinations and Euler characteristic") {
  Triangulation t = fixtures::figure_eight();
  std::array<std::int64_t, 1> zero{0}, one{1}, minus_two{-2};
  CHECK(edge_combination(t, zero).is_zero());
  CHECK(edge_combination(t, one) == ExponentVector{2, 1, 0, 2, 1, 0});
  CHECK(edge_combination(t, minus_two) == ExponentVector{-4, -2, 0, -4, -2, 0});
  std::array<std::int64_t, 2> two{1, 1};
  CHECK(kind_of([&] { edge_combination(t, two); }) == ErrorKind::LengthMismatch);
  CHECK(chi_of_combination(zero) == 0);
  CHECK(chi_of_combination(one) == -2);
  std::array<std::int64_t, 2> mixed{3, -1};
  CHECK(chi_of_combination(mixed) == -4);
}

TEST_CASE("surface normalization") {
  auto a = normalize_surface({3, 1, 2});
  CHECK(a.s_star == ExponentVector{2, 0, 1});
  CHECK(a.shifts == std::vector<std::int64_t>{1});
  auto b = normalize_surface({0, 0, 0});
  CHECK(b.s_star == ExponentVector{0, 0, 0});
  CHECK(b.shifts == std::vector<std::int64_t>{0});
  auto c = normalize_surface({-1, -3, 2});
  CHECK(c.s_star == ExponentVector{2, 0, 5});
  CHECK(c.shifts == std::vector<std::int64_t>{-3});
  for (ExponentVector x : {ExponentVector{4, -2, 7, 0, 1, 1}, ExponentVector{-5, -5, -5, 3, 9, 2}}) {
    auto n = normalize_surface(x);
    CHECK(normalize_surface(n.s_star).s_star == n.s_star);
    auto moved = normalize_surface(x + 3 * ExponentVector::tetrahedron(2, 1));
    CHECK(moved.s_star == n.s_star);
    CHECK(moved.shifts[1] == n.shifts[1] + 3);
    CHECK(moved.shifts[0] == n.shifts[0]);
  }
}

TEST_CASE("summand degree") {
  Triangulation t = fixtures::figure_eight();
  std::array<std::int64_t, 1> k{0};
  CHECK(summand_degree(t, ExponentVector(2), k) == HalfExp(0));

  // For S0 = Z''_0 Z''_1 the summand is q^{2k} J(2k,k,-1)^2.
  ExponentVector s0{0, 0, 1, 0, 0, 1};
  HalfExp prev{0};
  for (std::int64_t x = -50; x <= 50; ++x) {
    k[0] = x;
    HalfExp want = HalfExp(4 * x) + j_degree({2 * x, x, -1}) + j_degree({2 * x, x, -1});
    CHECK(summand_degree(t, s0, k) == want);
    if (x > 5) CHECK(summand_degree(t, s0, k) > prev);
    prev = summand_degree(t, s0, k);
  }
  for (std::int64_t x : {-50, 50}) {
    k[0] = x;
    CHECK(summand_degree(t, s0, k).value > 1000);
    CHECK(summand_degree(t, ExponentVector(2), k).value > 1000);
  }
}

TEST_CASE("degree is superadditive on normalized surfaces") {
  // Normalized surfaces of the same quad type in each tetrahedron (zero in the same slot).
  auto deg = [](const ExponentVector& s) {
    std::int64_t d = 0;
    for (std::size_t j = 0; j < s.num_tetrahedra(); ++j) d += j_degree(s.triple(j)).value;
    return d;
  };
  std::vector<ExponentVector> samples{{0, 2, 1, 3, 0, 0}, {0, 1, 4, 1, 0, 2}, {0, 0, 3, 2, 0, 1}, {0, 5, 1, 0, 0, 4}};
  for (const auto& a : samples)
    for (const auto& b : samples) {
      CHECK(normalize_surface(a + b).shifts == std::vector<std::int64_t>{0, 0});
      CHECK(deg(a + b) >= deg(a) + deg(b));
    }
}
