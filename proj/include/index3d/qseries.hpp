#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace index3d {

// Exponent of q counted in powers of q^{1/2}: q^{3/2} has value 3, q^{-1} has value -2.
//
// A distinguished saturating value stands for "no truncation"; it absorbs
// additions and subtractions of ordinary exponents so that order arithmetic on
// exact (polynomial) series needs no special cases.
struct HalfExp {
  std::int64_t value = 0;

  static constexpr std::int64_t kExact = std::int64_t{1} << 60;

  constexpr HalfExp() = default;
  constexpr explicit HalfExp(std::int64_t v) : value(v) {}

  static constexpr HalfExp exact() { return HalfExp(kExact); }
  constexpr bool is_exact() const { return value >= kExact; }

  friend constexpr auto operator<=>(HalfExp, HalfExp) = default;

  friend constexpr HalfExp operator+(HalfExp a, HalfExp b) {
    if (a.is_exact() || b.is_exact()) return exact();
    return HalfExp(a.value + b.value);
  }
  friend constexpr HalfExp operator-(HalfExp a, HalfExp b) {
    if (a.is_exact()) return exact();
    return HalfExp(a.value - b.value);
  }
  constexpr HalfExp operator-() const { return HalfExp(-value); }
  HalfExp& operator+=(HalfExp o) { return *this = *this + o; }
  HalfExp& operator-=(HalfExp o) { return *this = *this - o; }
};

// Truncated Laurent series in q^{1/2} with arbitrary-precision integer
// coefficients.
//
// Invariants:
//  - every stored coefficient sits at an exponent strictly below order();
//  - the first stored coefficient is nonzero; the zero series stores nothing;
//  - order() == HalfExp::exact() marks a Laurent polynomial known exactly.
//
// Values are immutable once built; all arithmetic returns new series whose
// order is the tightest one the inputs justify.
class QSeries {
 public:
  // The exact zero series.
  QSeries() = default;

  static QSeries zero(HalfExp order = HalfExp::exact());
  static QSeries one(HalfExp order = HalfExp::exact());
  static QSeries monomial(const mpz_class& c, HalfExp e, HalfExp order = HalfExp::exact());
  // Coefficients of q^{(min_exp + i)/2}; entries at or above order are dropped.
  static QSeries from_coefficients(HalfExp min_exp, std::vector<mpz_class> coeffs,
                                   HalfExp order = HalfExp::exact());

  // Exponent of the first nonzero coefficient; for a zero series this is order().
  HalfExp min_exp() const { return is_zero() ? order_ : min_exp_; }
  HalfExp order() const { return order_; }
  // One past the last stored exponent (== min_exp() for zero).
  HalfExp end_exp() const;
  std::span<const mpz_class> coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_exact() const { return order_.is_exact(); }

  // Coefficient of q^{e/2}. Throws InsufficientOrder when e >= order().
  mpz_class coefficient(HalfExp e) const;

  QSeries truncated(HalfExp order) const;
  // Multiplies by q^{by/2}; the order moves with it.
  QSeries shifted(HalfExp by) const;
  QSeries scaled(const mpz_class& c) const;
  // q^{1/2} -> q^{-1/2}. Throws InfinitePrecisionRequired for truncated input.
  QSeries reflected() const;

  QSeries operator-() const;
  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  QSeries& operator+=(const QSeries& other) { return *this = *this + other; }
  QSeries& operator*=(const QSeries& other) { return *this = *this * other; }

  // Structural equality: same order and same coefficients.
  friend bool operator==(const QSeries& a, const QSeries& b) = default;

  // Canonical text form "c*q^(p/2), c*q^(p/2) + O(q^(order/2))". Exact series
  // omit the O-term; the zero series prints as "0".
  std::string to_string() const;
  // Human-oriented form such as "1 - q - 2*q^2 + q^(5/2) + O(q^5)".
  std::string pretty() const;
  // Inverse of to_string(); throws ParseError.
  static QSeries parse(std::string_view text);

  // Evaluates the stored terms at a real q > 0, with q^{1/2} = sqrt(q).
  double evaluate(double q) const;

 private:
  void normalize();

  HalfExp min_exp_{};
  std::vector<mpz_class> coeffs_;
  HalfExp order_ = HalfExp::exact();
};

QSeries add(const QSeries& a, const QSeries& b);
QSeries mul(const QSeries& a, const QSeries& b);

struct SignedHalfPower {
  int sign = 1;
  HalfExp exp{};
};

// (-q^{1/2})^s as (sign, exponent).
SignedHalfPower neg_half_power(std::int64_t s);
// (-q^{1/2})^s as an exact series.
QSeries neg_half_power_series(std::int64_t s);

// Multiplicative inverse of a series whose leading coefficient is +-1.
// For exact non-monomial input the result is truncated at `cap`.
QSeries invert_unit(const QSeries& a, HalfExp cap = HalfExp::exact());

// True iff all coefficients below `order` agree. Throws InsufficientOrder when
// either input is not known that far.
bool eq_to_order(const QSeries& a, const QSeries& b, HalfExp order);

// First exponent below `order` where a and b differ, or `order` if none.
HalfExp first_difference(const QSeries& a, const QSeries& b, HalfExp order);

}  // namespace index3d
