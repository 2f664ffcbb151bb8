#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "index3d/qseries.hpp"
#include "index3d/tetindex.hpp"

namespace index3d {

// Which of the three quad slots (Z, Z', Z'') of a tetrahedron.
enum class Quad { A = 0, B = 1, C = 2 };

// Integer vector grouped in triples (a_j, b_j, c_j), one per tetrahedron.
// Serves both as a Weyl monomial exponent and as normal-surface quad coordinates.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::size_t num_tetrahedra) : v_(3 * num_tetrahedra, 0) {}
  // Throws LengthMismatch unless the length is a multiple of three.
  explicit ExponentVector(std::vector<std::int64_t> entries);
  ExponentVector(std::initializer_list<std::int64_t> entries)
      : ExponentVector(std::vector<std::int64_t>(entries)) {}

  static ExponentVector unit(std::size_t num_tetrahedra, std::size_t tet, Quad quad);
  // (1,1,1) on one tetrahedron.
  static ExponentVector tetrahedron(std::size_t num_tetrahedra, std::size_t tet);

  std::size_t size() const { return v_.size(); }
  std::size_t num_tetrahedra() const { return v_.size() / 3; }
  const std::vector<std::int64_t>& entries() const { return v_; }
  std::int64_t operator[](std::size_t i) const { return v_[i]; }
  std::int64_t& operator[](std::size_t i) { return v_[i]; }
  Triple triple(std::size_t tet) const { return {v_[3 * tet], v_[3 * tet + 1], v_[3 * tet + 2]}; }
  bool is_zero() const;

  ExponentVector operator-() const;
  friend ExponentVector operator+(const ExponentVector& x, const ExponentVector& y);
  friend ExponentVector operator-(const ExponentVector& x, const ExponentVector& y);
  friend ExponentVector operator*(std::int64_t s, const ExponentVector& x);
  ExponentVector& operator+=(const ExponentVector& y) { return *this = *this + y; }

  friend auto operator<=>(const ExponentVector&, const ExponentVector&) = default;
  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

  std::string to_string() const;

 private:
  std::vector<std::int64_t> v_;
};

// x^T D y with D block diagonal, blocks [[0,1,-1],[-1,0,1],[1,-1,0]].
std::int64_t omega(const ExponentVector& x, const ExponentVector& y);
// Sum over tetrahedra of ab + bc + ca.
std::int64_t delta_form(const ExponentVector& x);
// Twice the symmetric bilinear form whose diagonal is delta_form.
std::int64_t delta_pairing_doubled(const ExponentVector& x, const ExponentVector& y);

// Finite sum of Weyl-ordered monomials [Z^k] with series coefficients.
//
// Exactly-zero coefficients are never stored. A coefficient that is zero only
// below some truncation order is kept, since its order still bounds what the
// element is known to.
class TorusElement {
 public:
  using Terms = std::map<ExponentVector, QSeries>;

  TorusElement() = default;
  explicit TorusElement(std::size_t num_tetrahedra) : num_tets_(num_tetrahedra) {}

  static TorusElement unit(std::size_t num_tetrahedra);
  static TorusElement weyl(const ExponentVector& k, const QSeries& coeff = QSeries::one());

  std::size_t num_tetrahedra() const { return num_tets_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Smallest coefficient order over all terms (exact for the zero element).
  HalfExp order() const;

  void add_term(const ExponentVector& k, const QSeries& coeff);

  TorusElement operator-() const;
  TorusElement scaled(const QSeries& c) const;
  friend TorusElement operator+(const TorusElement& u, const TorusElement& v);
  friend TorusElement operator-(const TorusElement& u, const TorusElement& v);
  // [Z^k][Z^l] = q^{omega(k,l)/2} [Z^{k+l}], extended bilinearly.
  friend TorusElement operator*(const TorusElement& u, const TorusElement& v);

  friend bool operator==(const TorusElement&, const TorusElement&) = default;

  // Expression-language rendering; see expr.hpp.
  std::string to_string() const;

 private:
  void check_length(const ExponentVector& k) const;

  std::size_t num_tets_ = 0;
  Terms terms_;
};

TorusElement mul(const TorusElement& u, const TorusElement& v);
TorusElement weyl(const ExponentVector& k);

// (a,b,c) -> (-c,-b,-a) per tetrahedron.
ExponentVector iota_exponent(const ExponentVector& k);
// Chirality involution: exponents by iota_exponent, coefficients by q^{1/2} -> q^{-1/2}.
// Throws InfinitePrecisionRequired if a coefficient is truncated.
TorusElement iota_element(const TorusElement& u);

// T_d(m + m^{-1}) = [Z^{d gamma}] + [Z^{-d gamma}]; 2 for d = 0.
TorusElement peripheral_skein_image(const ExponentVector& gamma, std::int64_t d);

}  // namespace index3d
