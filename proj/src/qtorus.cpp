#include "index3d/qtorus.hpp"

#include <algorithm>

#include "index3d/errors.hpp"
#include "index3d/expr.hpp"

namespace index3d {

namespace {

void require_same_length(const ExponentVector& x, const ExponentVector& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::LengthMismatch,
                "exponent vectors of length " + std::to_string(x.size()) + " and " + std::to_string(y.size()));
  }
}

}  // namespace

ExponentVector::ExponentVector(std::vector<std::int64_t> entries) : v_(std::move(entries)) {
  if (v_.size() % 3 != 0) {
    throw Error(ErrorKind::LengthMismatch, "exponent vector length " + std::to_string(v_.size()) +
                                               " is not a multiple of 3");
  }
}

ExponentVector ExponentVector::unit(std::size_t num_tetrahedra, std::size_t tet, Quad quad) {
  if (tet >= num_tetrahedra) throw Error(ErrorKind::InvalidArgument, "tetrahedron index out of range");
  ExponentVector x(num_tetrahedra);
  x.v_[3 * tet + static_cast<std::size_t>(quad)] = 1;
  return x;
}

ExponentVector ExponentVector::tetrahedron(std::size_t num_tetrahedra, std::size_t tet) {
  if (tet >= num_tetrahedra) throw Error(ErrorKind::InvalidArgument, "tetrahedron index out of range");
  ExponentVector x(num_tetrahedra);
  for (std::size_t i = 0; i < 3; ++i) x.v_[3 * tet + i] = 1;
  return x;
}

bool ExponentVector::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](std::int64_t x) { return x == 0; });
}

ExponentVector ExponentVector::operator-() const { return -1 * *this; }

ExponentVector operator+(const ExponentVector& x, const ExponentVector& y) {
  require_same_length(x, y);
  ExponentVector z = x;
  for (std::size_t i = 0; i < z.v_.size(); ++i) z.v_[i] += y.v_[i];
  return z;
}

ExponentVector operator-(const ExponentVector& x, const ExponentVector& y) { return x + (-y); }

ExponentVector operator*(std::int64_t s, const ExponentVector& x) {
  ExponentVector z = x;
  for (auto& e : z.v_) e *= s;
  return z;
}

std::string ExponentVector::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(v_[i]);
  }
  return out + ")";
}

std::int64_t omega(const ExponentVector& x, const ExponentVector& y) {
  require_same_length(x, y);
  std::int64_t s = 0;
  for (std::size_t j = 0; j < x.num_tetrahedra(); ++j) {
    Triple u = x.triple(j), v = y.triple(j);
    s += u.a * (v.b - v.c) + u.b * (v.c - v.a) + u.c * (v.a - v.b);
  }
  return s;
}

std::int64_t delta_form(const ExponentVector& x) {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < x.num_tetrahedra(); ++j) {
    Triple u = x.triple(j);
    s += u.a * u.b + u.b * u.c + u.c * u.a;
  }
  return s;
}

std::int64_t delta_pairing_doubled(const ExponentVector& x, const ExponentVector& y) {
  require_same_length(x, y);
  std::int64_t s = 0;
  for (std::size_t j = 0; j < x.num_tetrahedra(); ++j) {
    Triple u = x.triple(j), v = y.triple(j);
    s += u.a * (v.b + v.c) + u.b * (v.c + v.a) + u.c * (v.a + v.b);
  }
  return s;
}

TorusElement TorusElement::unit(std::size_t num_tetrahedra) {
  return weyl(ExponentVector(num_tetrahedra));
}

TorusElement TorusElement::weyl(const ExponentVector& k, const QSeries& coeff) {
  TorusElement u(k.num_tetrahedra());
  u.add_term(k, coeff);
  return u;
}

TorusElement weyl(const ExponentVector& k) { return TorusElement::weyl(k); }

HalfExp TorusElement::order() const {
  HalfExp o = HalfExp::exact();
  for (const auto& [k, c] : terms_) o = std::min(o, c.order());
  return o;
}

void TorusElement::check_length(const ExponentVector& k) const {
  if (k.num_tetrahedra() != num_tets_) {
    throw Error(ErrorKind::LengthMismatch, "monomial over " + std::to_string(k.num_tetrahedra()) +
                                               " tetrahedra added to an element over " + std::to_string(num_tets_));
  }
}

void TorusElement::add_term(const ExponentVector& k, const QSeries& coeff) {
  check_length(k);
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    if (coeff.is_zero() && coeff.is_exact()) return;
    terms_.emplace(k, coeff);
    return;
  }
  it->second += coeff;
  if (it->second.is_zero() && it->second.is_exact()) terms_.erase(it);
}

TorusElement TorusElement::operator-() const { return scaled(QSeries::monomial(-1, HalfExp(0))); }

TorusElement TorusElement::scaled(const QSeries& c) const {
  TorusElement out(num_tets_);
  for (const auto& [k, x] : terms_) out.add_term(k, x * c);
  return out;
}

TorusElement operator+(const TorusElement& u, const TorusElement& v) {
  if (u.num_tets_ != v.num_tets_) throw Error(ErrorKind::LengthMismatch, "torus elements over different lattices");
  TorusElement out = u;
  for (const auto& [k, c] : v.terms_) out.add_term(k, c);
  return out;
}

TorusElement operator-(const TorusElement& u, const TorusElement& v) { return u + (-v); }

TorusElement operator*(const TorusElement& u, const TorusElement& v) {
  if (u.num_tets_ != v.num_tets_) throw Error(ErrorKind::LengthMismatch, "torus elements over different lattices");
  TorusElement out(u.num_tets_);
  for (const auto& [k, a] : u.terms_) {
    for (const auto& [l, b] : v.terms_) out.add_term(k + l, (a * b).shifted(HalfExp(omega(k, l))));
  }
  return out;
}

TorusElement mul(const TorusElement& u, const TorusElement& v) { return u * v; }

std::string TorusElement::to_string() const { return format_element(*this); }

ExponentVector iota_exponent(const ExponentVector& k) {
  std::vector<std::int64_t> v(k.size());
  for (std::size_t j = 0; j < k.num_tetrahedra(); ++j) {
    Triple t = k.triple(j);
    v[3 * j] = -t.c;
    v[3 * j + 1] = -t.b;
    v[3 * j + 2] = -t.a;
  }
  return ExponentVector(std::move(v));
}

TorusElement iota_element(const TorusElement& u) {
  TorusElement out(u.num_tetrahedra());
  for (const auto& [k, c] : u.terms()) out.add_term(iota_exponent(k), c.reflected());
  return out;
}

TorusElement peripheral_skein_image(const ExponentVector& gamma, std::int64_t d) {
  if (d < 0) throw Error(ErrorKind::InvalidArgument, "Chebyshev degree must be nonnegative");
  if (d == 0) return TorusElement::weyl(ExponentVector(gamma.num_tetrahedra()), QSeries::monomial(2, HalfExp(0)));
  return weyl(d * gamma) + weyl(-d * gamma);
}

}  // namespace index3d
