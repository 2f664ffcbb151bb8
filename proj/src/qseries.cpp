#include "index3d/qseries.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "index3d/errors.hpp"

namespace index3d {

namespace {

std::string exp_text(HalfExp e) { return "q^(" + std::to_string(e.value) + "/2)"; }

std::string pretty_power(std::int64_t e) {
  if (e % 2 != 0) return "q^(" + std::to_string(e) + "/2)";
  std::int64_t w = e / 2;
  if (w == 1) return "q";
  return "q^" + (w < 0 ? "(" + std::to_string(w) + ")" : std::to_string(w));
}

}  // namespace

QSeries QSeries::zero(HalfExp order) {
  QSeries s;
  s.order_ = order;
  s.min_exp_ = order;
  return s;
}

QSeries QSeries::one(HalfExp order) { return monomial(1, HalfExp(0), order); }

QSeries QSeries::monomial(const mpz_class& c, HalfExp e, HalfExp order) {
  QSeries s;
  s.order_ = order;
  s.min_exp_ = e;
  if (c != 0 && e < order) s.coeffs_.push_back(c);
  s.normalize();
  return s;
}

QSeries QSeries::from_coefficients(HalfExp min_exp, std::vector<mpz_class> coeffs, HalfExp order) {
  QSeries s;
  s.order_ = order;
  s.min_exp_ = min_exp;
  s.coeffs_ = std::move(coeffs);
  s.normalize();
  return s;
}

void QSeries::normalize() {
  if (!order_.is_exact() && min_exp_ + HalfExp(static_cast<std::int64_t>(coeffs_.size())) > order_) {
    std::int64_t keep = std::max<std::int64_t>(0, order_.value - min_exp_.value);
    coeffs_.resize(static_cast<std::size_t>(keep));
  }
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    min_exp_ = order_;
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    min_exp_ += HalfExp(static_cast<std::int64_t>(lead));
  }
}

HalfExp QSeries::end_exp() const {
  if (is_zero()) return min_exp();
  return min_exp_ + HalfExp(static_cast<std::int64_t>(coeffs_.size()));
}

mpz_class QSeries::coefficient(HalfExp e) const {
  if (e >= order_) {
    throw Error(ErrorKind::InsufficientOrder,
                "coefficient of q^(" + std::to_string(e.value) + "/2) requested from a series known below q^(" +
                    std::to_string(order_.value) + "/2)");
  }
  if (is_zero() || e < min_exp_ || e >= end_exp()) return 0;
  return coeffs_[static_cast<std::size_t>(e.value - min_exp_.value)];
}

QSeries QSeries::truncated(HalfExp order) const {
  if (order >= order_) return *this;
  QSeries s = *this;
  s.order_ = order;
  if (s.is_zero()) s.min_exp_ = order;
  s.normalize();
  return s;
}

QSeries QSeries::shifted(HalfExp by) const {
  QSeries s = *this;
  s.order_ = order_ + by;
  s.min_exp_ = min_exp_ + by;
  if (s.is_zero()) s.min_exp_ = s.order_;
  return s;
}

QSeries QSeries::scaled(const mpz_class& c) const {
  if (c == 0) return zero(order_);
  QSeries s = *this;
  for (auto& x : s.coeffs_) x *= c;
  return s;
}

QSeries QSeries::reflected() const {
  if (!is_exact()) {
    throw Error(ErrorKind::InfinitePrecisionRequired,
                "q^(1/2) -> q^(-1/2) needs an exactly known series, got one truncated at q^(" +
                    std::to_string(order_.value) + "/2)");
  }
  if (is_zero()) return *this;
  std::vector<mpz_class> c(coeffs_.rbegin(), coeffs_.rend());
  return from_coefficients(-(end_exp() - HalfExp(1)), std::move(c));
}

QSeries QSeries::operator-() const { return scaled(-1); }

QSeries operator+(const QSeries& a, const QSeries& b) {
  HalfExp order = std::min(a.order(), b.order());
  if (a.is_zero()) return b.truncated(order);
  if (b.is_zero()) return a.truncated(order);
  HalfExp lo = std::min(a.min_exp_, b.min_exp_);
  HalfExp hi = std::min(std::max(a.end_exp(), b.end_exp()), order);
  if (hi <= lo) return QSeries::zero(order);
  std::vector<mpz_class> c(static_cast<std::size_t>(hi.value - lo.value));
  auto accumulate = [&](const QSeries& s) {
    for (std::size_t i = 0; i < s.coeffs_.size(); ++i) {
      std::int64_t at = s.min_exp_.value + static_cast<std::int64_t>(i) - lo.value;
      if (at >= static_cast<std::int64_t>(c.size())) break;
      c[static_cast<std::size_t>(at)] += s.coeffs_[i];
    }
  };
  accumulate(a);
  accumulate(b);
  return QSeries::from_coefficients(lo, std::move(c), order);
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const QSeries& a, const QSeries& b) {
  HalfExp order = std::min(a.order() + b.min_exp(), b.order() + a.min_exp());
  if (a.is_zero() || b.is_zero()) return QSeries::zero(order);
  HalfExp lo = a.min_exp_ + b.min_exp_;
  HalfExp hi = std::min(a.end_exp() + b.end_exp() - HalfExp(1), order);
  if (hi <= lo) return QSeries::zero(order);
  std::size_t n = static_cast<std::size_t>(hi.value - lo.value);
  std::vector<mpz_class> c(n);
  std::size_t na = a.coeffs_.size();
  std::size_t nb = b.coeffs_.size();
  for (std::size_t i = 0; i < na && i < n; ++i) {
    if (a.coeffs_[i] == 0) continue;
    std::size_t lim = std::min(nb, n - i);
    for (std::size_t j = 0; j < lim; ++j) mpz_addmul(c[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
  }
  return QSeries::from_coefficients(lo, std::move(c), order);
}

QSeries add(const QSeries& a, const QSeries& b) { return a + b; }
QSeries mul(const QSeries& a, const QSeries& b) { return a * b; }

std::string QSeries::to_string() const {
  std::string out;
  if (is_zero()) {
    out = "0";
  } else {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      if (!out.empty()) out += ", ";
      out += coeffs_[i].get_str() + "*" + exp_text(min_exp_ + HalfExp(static_cast<std::int64_t>(i)));
    }
  }
  if (!is_exact()) out += " + O(" + exp_text(order_) + ")";
  return out;
}

std::string QSeries::pretty() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const mpz_class& c = coeffs_[i];
    if (c == 0) continue;
    std::int64_t e = min_exp_.value + static_cast<std::int64_t>(i);
    mpz_class mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (e == 0) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += pretty_power(e);
    }
  }
  if (out.empty()) out = "0";
  if (!is_exact()) out += " + O(" + (order_.value == 0 ? std::string("1") : pretty_power(order_.value)) + ")";
  return out;
}

namespace {

class TextCursor {
 public:
  explicit TextCursor(std::string_view t) : text_(t) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  std::string integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected an integer");
    std::string s(text_.substr(start, pos_ - start));
    if (s.front() == '+') s.erase(0, 1);
    return s;
  }
  std::int64_t small_integer() {
    std::string s = integer();
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail("exponent out of range");
    return v;
  }
  // A bare "0" standing for the zero series.
  bool accept_zero_literal() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '0') return false;
    std::size_t next = pos_ + 1;
    if (next < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[next])) || text_[next] == '*')) return false;
    pos_ = next;
    return true;
  }
  // Parses "q^(p/2)" and returns p.
  HalfExp power() {
    expect("q^(");
    std::int64_t p = small_integer();
    expect("/2)");
    return HalfExp(p);
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError, what + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

QSeries QSeries::parse(std::string_view text) {
  TextCursor cur(text);
  if (cur.done()) cur.fail("empty series");
  std::vector<std::pair<HalfExp, mpz_class>> terms;
  if (!cur.accept_zero_literal()) {
    while (true) {
      mpz_class c(cur.integer());
      cur.expect("*");
      HalfExp e = cur.power();
      if (!terms.empty() && e <= terms.back().first) cur.fail("exponents must increase");
      terms.emplace_back(e, c);
      if (!cur.accept(",")) break;
    }
  }
  HalfExp order = HalfExp::exact();
  if (cur.accept("+")) {
    cur.expect("O(");
    order = cur.power();
    cur.expect(")");
  }
  if (!cur.done()) cur.fail("trailing input");
  if (terms.empty()) return zero(order);
  if (terms.back().first >= order) cur.fail("term at or beyond the truncation order");
  HalfExp lo = terms.front().first;
  std::vector<mpz_class> c(static_cast<std::size_t>(terms.back().first.value - lo.value + 1));
  for (auto& [e, v] : terms) c[static_cast<std::size_t>(e.value - lo.value)] = v;
  return from_coefficients(lo, std::move(c), order);
}

double QSeries::evaluate(double q) const {
  double root = std::sqrt(q);
  double sum = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    double e = static_cast<double>(min_exp_.value + static_cast<std::int64_t>(i));
    sum += coeffs_[i].get_d() * std::pow(root, e);
  }
  return sum;
}

SignedHalfPower neg_half_power(std::int64_t s) { return {s % 2 == 0 ? 1 : -1, HalfExp(s)}; }

QSeries neg_half_power_series(std::int64_t s) {
  auto p = neg_half_power(s);
  return QSeries::monomial(p.sign, p.exp);
}

QSeries invert_unit(const QSeries& a, HalfExp cap) {
  if (a.is_zero()) throw Error(ErrorKind::LeadingCoefficientNotUnit, "cannot invert the zero series");
  auto c = a.coefficients();
  const mpz_class& lead = c.front();
  if (lead != 1 && lead != -1) {
    throw Error(ErrorKind::LeadingCoefficientNotUnit, "leading coefficient " + lead.get_str() + " is not a unit");
  }
  HalfExp m = a.min_exp();
  int sign = lead > 0 ? 1 : -1;
  if (c.size() == 1 && a.is_exact()) return QSeries::monomial(sign, -m);
  HalfExp order = std::min(cap, a.order() - m - m);
  if (order.is_exact()) {
    throw Error(ErrorKind::InvalidArgument, "inverse of a non-monomial polynomial needs a finite cap");
  }
  // Invert u = sign * (1 + t) where a = q^m u, then shift by -m.
  std::int64_t len = order.value + m.value;
  if (len <= 0) return QSeries::zero(order);
  std::vector<mpz_class> inv(static_cast<std::size_t>(len));
  inv[0] = sign;
  for (std::int64_t k = 1; k < len; ++k) {
    mpz_class acc = 0;
    std::int64_t top = std::min<std::int64_t>(k, static_cast<std::int64_t>(c.size()) - 1);
    for (std::int64_t i = 1; i <= top; ++i) acc += c[static_cast<std::size_t>(i)] * inv[static_cast<std::size_t>(k - i)];
    inv[static_cast<std::size_t>(k)] = -acc * sign;
  }
  return QSeries::from_coefficients(-m, std::move(inv), order);
}

bool eq_to_order(const QSeries& a, const QSeries& b, HalfExp order) {
  return first_difference(a, b, order) >= order;
}

HalfExp first_difference(const QSeries& a, const QSeries& b, HalfExp order) {
  if (order > a.order() || order > b.order()) {
    throw Error(ErrorKind::InsufficientOrder,
                "comparison to q^(" + std::to_string(order.value) + "/2) but inputs are known to q^(" +
                    std::to_string(a.order().value) + "/2) and q^(" + std::to_string(b.order().value) + "/2)");
  }
  QSeries d = (a - b);
  if (d.is_zero() || d.min_exp() >= order) return order;
  return d.min_exp();
}

}  // namespace index3d
