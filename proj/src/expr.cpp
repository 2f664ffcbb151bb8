#include "index3d/expr.hpp"

#include <cctype>
#include <charconv>
#include <optional>

#include "index3d/errors.hpp"

namespace index3d {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t n) : text_(text), n_(n) {}

  TorusElement parse() {
    TorusElement u = element();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return u;
  }

 private:
  TorusElement element() {
    skip_ws();
    bool negate = false;
    if (peek() == '+' || peek() == '-') negate = text_[pos_++] == '-';
    TorusElement u = product();
    if (negate) u = -u;
    while (true) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      TorusElement v = product();
      u = c == '+' ? u + v : u - v;
    }
    return u;
  }

  // Multiplies the pending run of generators into the running product.
  void flush(TorusElement& acc, ExponentVector& run, bool& have_run) {
    if (!have_run) return;
    acc = acc * TorusElement::weyl(run);
    run = ExponentVector(n_);
    have_run = false;
  }

  TorusElement product() {
    TorusElement acc = TorusElement::unit(n_);
    ExponentVector run(n_);
    bool have_run = false;
    mpz_class scalar = 1;
    HalfExp qpow(0);
    while (true) {
      skip_ws();
      char c = peek();
      if (c == '(') {
        ++pos_;
        TorusElement inner = element();
        expect(')');
        if (accept('^')) {
          std::int64_t p = whole_power();
          if (p < 0) fail("negative powers of a parenthesized sum are not supported");
          TorusElement base = inner;
          inner = TorusElement::unit(n_);
          for (std::int64_t i = 0; i < p; ++i) inner = inner * base;
        }
        flush(acc, run, have_run);
        acc = acc * inner;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        mpz_class v(digits());
        if (accept('^')) {
          std::int64_t p = whole_power();
          if (p < 0) fail("negative powers of integers are not supported");
          mpz_pow_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(p));
        }
        scalar *= v;
      } else if (c == 'q') {
        ++pos_;
        qpow += accept('^') ? half_power() : HalfExp(2);
      } else if (c == 'Z') {
        ++pos_;
        Quad quad = Quad::A;
        if (accept('p')) quad = accept('p') ? Quad::C : Quad::B;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a tetrahedron number");
        std::int64_t tet = std::stoll(digits());
        if (tet < 1 || static_cast<std::size_t>(tet) > n_) {
          fail("tetrahedron " + std::to_string(tet) + " out of range 1.." + std::to_string(n_));
        }
        std::int64_t p = accept('^') ? whole_power() : 1;
        run[3 * static_cast<std::size_t>(tet - 1) + static_cast<std::size_t>(quad)] += p;
        have_run = true;
      } else {
        fail("expected a factor");
      }
      skip_ws();
      if (!accept('*')) break;
    }
    flush(acc, run, have_run);
    return acc.scaled(QSeries::monomial(scalar, qpow));
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::int64_t small(const std::string& s) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) fail("number out of range");
    return v;
  }

  // Exponent in half-units: "k", "-k", "(k)", "(-k)", "(k/2)", "(-k/2)".
  HalfExp half_power() {
    skip_ws();
    if (accept('(')) {
      bool neg = accept('-');
      skip_ws();
      std::int64_t v = small(digits());
      std::int64_t h = 2 * v;
      if (accept('/')) {
        skip_ws();
        if (digits() != "2") fail("only denominators of 2 are allowed");
        h = v;
      }
      expect(')');
      return HalfExp(neg ? -h : h);
    }
    bool neg = accept('-');
    std::int64_t v = small(digits());
    return HalfExp(neg ? -2 * v : 2 * v);
  }

  std::int64_t whole_power() {
    HalfExp h = half_power();
    if (h.value % 2 != 0) fail("half-integer powers are only allowed on q");
    return h.value / 2;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError,
                what + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  std::string_view text_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

std::string q_factor(std::int64_t h) {
  if (h == 0) return "";
  if (h % 2 != 0) return "q^(" + std::to_string(h) + "/2)";
  if (h == 2) return "q";
  return "q^" + (h < 0 ? "(" + std::to_string(h / 2) + ")" : std::to_string(h / 2));
}

std::string monomial_text(const ExponentVector& k) {
  static const char* names[] = {"Z", "Zp", "Zpp"};
  std::string out;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[i % 3] + std::to_string(i / 3 + 1);
    if (k[i] != 1) out += "^" + std::to_string(k[i]);
  }
  return out;
}

}  // namespace

TorusElement parse_element(std::string_view text, std::size_t num_tetrahedra) {
  return Parser(text, num_tetrahedra).parse();
}

std::string format_element(const TorusElement& u) {
  std::string out;
  auto emit = [&out](bool negative, const std::string& body) {
    if (out.empty()) out = negative ? "-" + body : body;
    else out += (negative ? " - " : " + ") + body;
  };
  for (const auto& [k, c] : u.terms()) {
    std::string mono = monomial_text(k);
    if (!c.is_exact()) {
      emit(false, "(" + c.pretty() + ")" + (mono.empty() ? "" : "*" + mono));
      continue;
    }
    auto coeffs = c.coefficients();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] == 0) continue;
      mpz_class mag = abs(coeffs[i]);
      std::string qf = q_factor(c.min_exp().value + static_cast<std::int64_t>(i));
      std::string body;
      for (const std::string& part : {mag == 1 && !(qf.empty() && mono.empty()) ? std::string() : mag.get_str(), qf, mono}) {
        if (part.empty()) continue;
        if (!body.empty()) body += "*";
        body += part;
      }
      emit(coeffs[i] < 0, body);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace index3d
