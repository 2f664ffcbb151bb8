#include <doctest.h>

#include "index3d/errors.hpp"
#include "index3d/expr.hpp"
#include "index3d/fixtures.hpp"

using namespace index3d;

namespace {

HalfExp H(std::int64_t v) { return HalfExp(v); }

ErrorKind parse_error_kind(std::string_view text, std::size_t n) {
  try {
    parse_element(text, n);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown for " << text);
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("atoms") {
  CHECK(parse_element("1", 2) == TorusElement::unit(2));
  CHECK(parse_element("Zpp1*Zpp2", 2) == weyl({0, 0, 1, 0, 0, 1}));
  CHECK(parse_element("Z1^-1*Zp2^2", 2) == weyl({-1, 0, 0, 0, 2, 0}));
  CHECK(parse_element("q^(3/2)", 1) == TorusElement::weyl(ExponentVector(1), QSeries::monomial(1, H(3))));
  CHECK(parse_element("q^-1 - 2", 1) ==
        TorusElement::weyl(ExponentVector(1), QSeries::from_coefficients(H(-2), {1, 0, -2})));
}

TEST_CASE("runs of generators are Weyl ordered") {
  // Z1*Zp1 is the single symmetric monomial, (Z1)*(Zp1) is the torus product
  CHECK(parse_element("Z1*Zp1", 1) == weyl({1, 1, 0}));
  CHECK(parse_element("(Z1)*(Zp1)", 1) == weyl({1, 0, 0}) * weyl({0, 1, 0}));
  CHECK(parse_element("Zp1*(Z1)", 1) == weyl({0, 1, 0}) * weyl({1, 0, 0}));
}

TEST_CASE("bundled elements") {
  TorusElement kb = parse_element(fixtures::kKbElement, 2);
  CHECK(kb.terms().size() == 3);
  for (const auto& [k, c] : kb.terms()) CHECK(c == QSeries::monomial(-1, H(-1)));
  CHECK(kb.terms().count({-1, 0, 0, 0, 0, 1}) == 1);
  CHECK(kb.terms().count({0, 0, 1, -1, 0, 0}) == 1);
  CHECK(kb.terms().count({0, 0, 1, 0, 0, 1}) == 1);
  TorusElement kb2 = parse_element(fixtures::kKb2Element, 2);
  CHECK(kb2.terms().size() == 6);
}

TEST_CASE("format and parse round trip") {
  for (std::string_view text : {std::string_view("1"), std::string_view("Zpp1*Zpp2"), fixtures::kKbElement,
                                fixtures::kKb2Element, std::string_view("3*q^(1/2)*Z1^-2 - Zp1*Zpp1^3 + q^-4")}) {
    TorusElement u = parse_element(text, 2);
    CHECK(parse_element(format_element(u), 2) == u);
  }
  CHECK(format_element(TorusElement(2)) == "0");
}

TEST_CASE("malformed expressions") {
  CHECK(parse_error_kind("", 2) == ErrorKind::ParseError);
  CHECK(parse_error_kind("Z1 +", 2) == ErrorKind::ParseError);
  CHECK(parse_error_kind("Z0", 2) == ErrorKind::ParseError);
  CHECK(parse_error_kind("Z3", 2) == ErrorKind::ParseError);
  CHECK(parse_error_kind("Z1^(1/2)", 2) == ErrorKind::ParseError);
  CHECK(parse_error_kind("(Z1", 2) == ErrorKind::ParseError);
  CHECK(parse_error_kind("W1", 2) == ErrorKind::ParseError);
}
