#include <doctest.h>

#include <cmath>

#include "index3d/errors.hpp"
#include "index3d/expr.hpp"
#include "index3d/fixtures.hpp"
#include "index3d/indexer.hpp"
#include "test_support.hpp"

using namespace index3d;
using index3d::testing::fixture_path;
using index3d::testing::oracle;

namespace {

HalfExp H(std::int64_t v) { return HalfExp(v); }

SummationOptions at(std::int64_t order) {
  SummationOptions o;
  o.order = H(order);
  return o;
}

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

// sum_k q^{shift(k)/2} J(t1(k)) J(t2(k)) over |k| <= 30, directly from J.
template <typename F>
QSeries explicit_sum(std::int64_t order, F&& summand) {
  QSeries total = QSeries::zero(H(order));
  for (std::int64_t k = -30; k <= 30; ++k) {
    auto [shift, t1, t2] = summand(k);
    std::array<Triple, 2> f{t1, t2};
    total += j_product(H(shift), f, H(order));
  }
  return total;
}

}  // namespace

TEST_CASE("monomial index against the oracle") {
  Triangulation t = fixtures::figure_eight();
  QSeries zero_charge = oracle("fig8_dgg_0_0");
  IndexResult r = index_monomial(t, ExponentVector(2), at(zero_charge.order().value));
  CHECK(r.series == zero_charge);
  CHECK(r.series.coefficient(H(0)) == 1);
  CHECK(r.termination == "heuristic");
  CHECK(r.contributing > 0);
  QSeries zz = oracle("fig8_Zpp_Zpp");
  CHECK(index_monomial(t, {0, 0, 1, 0, 0, 1}, at(zz.order().value)).series == zz);
}

TEST_CASE("summand shapes of the bundled element") {
  Triangulation t = fixtures::figure_eight();
  const std::int64_t order = 16;
  // [Z''_0 Z''_1]: q^{2k} J(2k,k,-1)^2
  QSeries a = explicit_sum(order, [](std::int64_t k) {
    return std::tuple{4 * k, Triple{2 * k, k, -1}, Triple{2 * k, k, -1}};
  });
  CHECK(index_monomial(t, {0, 0, 1, 0, 0, 1}, at(order)).series == a);
  // [Z_0^{-1} Z''_1]: q^k J(2k+1,k,0) J(2k,k,-1)
  QSeries b = explicit_sum(order, [](std::int64_t k) {
    return std::tuple{2 * k, Triple{2 * k + 1, k, 0}, Triple{2 * k, k, -1}};
  });
  CHECK(index_monomial(t, {-1, 0, 0, 0, 0, 1}, at(order)).series == b);
  CHECK(index_monomial(t, {0, 0, 1, -1, 0, 0}, at(order)).series == b);
}

TEST_CASE("element index") {
  Triangulation t = fixtures::figure_eight();
  CHECK(index_element(t, TorusElement::unit(2), at(14)).series ==
        index_monomial(t, ExponentVector(2), at(14)).series);
  TorusElement kb = parse_element(fixtures::kKbElement, 2);
  QSeries ref = oracle("fig8_kb");  // -q^{1/2} I(K_b)
  QSeries got = index_element(t, kb, at(ref.order().value - 1)).series.shifted(H(1)).scaled(-1);
  CHECK(got == ref);
  QSeries mirror = oracle("fig8_kb_mirror");
  QSeries m = index_element(t, iota_element(kb), at(mirror.order().value + 1)).series.shifted(H(-1)).scaled(-1);
  CHECK(m == mirror);
}

TEST_CASE("linearity") {
  Triangulation t = fixtures::figure_eight();
  TorusElement u = parse_element("Zpp1*Zpp2", 2), v = parse_element("Z1^-1*Zpp2", 2);
  QSeries a = QSeries::monomial(3, H(-1)), b = QSeries::monomial(-2, H(2));
  QSeries lhs = index_element(t, u.scaled(a) + v.scaled(b), at(12)).series;
  QSeries iu = index_element(t, u, at(14)).series, iv = index_element(t, v, at(14)).series;
  CHECK(eq_to_order(lhs, a * iu + b * iv, H(12)));
}

TEST_CASE("coefficients must be known to the requested order") {
  Triangulation t = fixtures::figure_eight();
  TorusElement u(2);
  u.add_term(ExponentVector(2), QSeries::one(H(6)));
  CHECK(kind_of([&] { index_element(t, u, at(10)); }) == ErrorKind::InsufficientOrder);
  CHECK(index_element(t, u, at(6)).series.order() == H(6));
  CHECK(kind_of([&] { index_monomial(t, ExponentVector(3), at(6)); }) == ErrorKind::LengthMismatch);
}

TEST_CASE("edge-sum cross-check") {
  Triangulation t = fixtures::figure_eight();
  for (std::string_view text : {std::string_view("1"), std::string_view("Zpp1*Zpp2"), fixtures::kKbElement}) {
    TorusElement u = parse_element(text, 2);
    CHECK(index_element_edge_sum(t, u, at(12)).series == index_element(t, u, at(12)).series);
  }
}

TEST_CASE("independent-edge re-selection") {
  Triangulation t = fixtures::figure_eight();
  Triangulation other = t;
  other.independent_edges = {1};
  validate(other);
  Triangulation swapped = t;
  std::swap(swapped.edge_rows[0], swapped.edge_rows[1]);
  swapped.independent_edges.clear();
  validate(swapped);
  CHECK(swapped.independent_edges == std::vector<std::size_t>{0});
  for (ExponentVector s0 : {ExponentVector(2), ExponentVector{0, 0, 1, 0, 0, 1}, ExponentVector{1, -1, 0, 2, 0, 1}}) {
    QSeries ref = index_monomial(t, s0, at(16)).series;
    CHECK(index_monomial(other, s0, at(16)).series == ref);
    CHECK(index_monomial(swapped, s0, at(16)).series == ref);
  }
}

TEST_CASE("DGG charges") {
  Triangulation t = fixtures::figure_eight();
  CHECK(dgg_exponent(t, 0, 0, 0).is_zero());
  CHECK(dgg_exponent(t, 0, 0, 1) == ExponentVector{1, 0, 0, 0, 0, -1});
  CHECK(dgg_exponent(t, 0, 1, 0) == ExponentVector{0, 0, 0, -1, 0, 1});
  for (auto [e, name] : {std::pair{0, "fig8_dgg_0_0"}, {1, "fig8_dgg_0_1"}}) {
    QSeries ref = oracle(name);
    CHECK(dgg_index(t, 0, 0, e, at(ref.order().value)).series == ref);
  }
  // half-integer m is allowed here because the stored longitude is even
  IndexResult half = dgg_index(t, 0, 1, 0, at(10));
  CHECK_FALSE(half.series.is_zero());
  Triangulation three = load_and_validate(fixture_path("fig8_3tet.json"));
  CHECK(kind_of([&] { dgg_index(three, 0, 1, 0, at(10)); }) == ErrorKind::NonIntegralCharge);
  CHECK(kind_of([&] { dgg_index(t, 1, 0, 0, at(10)); }) == ErrorKind::InvalidArgument);
  // the three-tetrahedron triangulation of the same manifold gives the same integral-charge series
  for (auto [m2, e] : {std::pair{0, 0}, {0, 1}, {2, 0}, {-2, 1}}) {
    CHECK(dgg_index(three, 0, m2, e, at(10)).series == dgg_index(t, 0, m2, e, at(10)).series);
  }
}

TEST_CASE("duality under q -> 1/q") {
  Triangulation t = fixtures::figure_eight();
  for (auto [m, e] : {std::pair{0, 1}, {1, 0}, {1, -1}}) {
    double big = index_monomial_numeric(t, dgg_exponent(t, 0, 2 * m, e), 2.5, 1e-14);
    QSeries small = dgg_index(t, 0, -2 * m, -e, at(90)).series;
    CAPTURE(m);
    CAPTURE(e);
    CHECK(std::fabs(big - small.evaluate(0.4)) < 1e-8);
  }
}

TEST_CASE("radius limit is reported") {
  Triangulation t = fixtures::figure_eight();
  SummationOptions o = at(60);
  o.max_radius = 1;
  CHECK(kind_of([&] { index_monomial(t, ExponentVector(2), o); }) == ErrorKind::RadiusExceeded);
}

TEST_CASE("threaded summation is deterministic") {
  Triangulation t = load_and_validate(fixture_path("fig8_3tet.json"));
  SummationOptions one = at(12), many = at(12);
  many.threads = 4;
  ExponentVector s0{0, 0, 1, 0, 1, 0, 1, 0, 0};
  IndexResult a = index_monomial(t, s0, one), b = index_monomial(t, s0, many);
  CHECK(a.series == b.series);
  CHECK(a.radius == b.radius);
  CHECK(a.contributing == b.contributing);
}

TEST_CASE("quotient relations") {
  Triangulation t = fixtures::figure_eight();
  for (ExponentVector s0 : {ExponentVector(2), ExponentVector{0, 0, 1, 0, 0, 1}}) {
    RelationReport rep = check_quotient_relations(t, s0, at(12));
    CHECK(rep.all_passed());
    CHECK(rep.checks.size() == 6);
  }
  // corrupt the dependent edge row: Lagrangian and central checks still hold, the edge check does not
  Triangulation bad = t;
  bad.edge_rows[1] = ExponentVector{0, 1, 2, 0, 2, 1};
  RelationReport rep = check_quotient_relations(bad, ExponentVector(2), at(12));
  CHECK_FALSE(rep.all_passed());
  for (const auto& c : rep.checks) {
    CAPTURE(c.relation);
    if (c.relation == "edge" && c.index == 1) CHECK_FALSE(c.passed);
    else CHECK(c.passed);
  }
}
