#include "index3d/tetindex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "index3d/errors.hpp"

namespace index3d {

namespace {

using Poly = std::vector<mpz_class>;

void require_finite(HalfExp order, const char* what) {
  if (order.is_exact()) throw Error(ErrorKind::InvalidArgument, std::string(what) + " needs a finite order");
}

// In place: f <- f / (1 - q^n), all exponents in whole powers of q.
void divide_by_one_minus(Poly& f, std::int64_t n) {
  for (std::size_t k = static_cast<std::size_t>(n); k < f.size(); ++k) f[k] += f[k - static_cast<std::size_t>(n)];
}

// Product of two q-polynomials truncated to `len` coefficients.
Poly product(const Poly& a, const Poly& b, std::size_t len) {
  Poly c(len);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    std::size_t lim = std::min(b.size(), len - i);
    for (std::size_t j = 0; j < lim; ++j) mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  }
  return c;
}

std::int64_t term_exponent(std::int64_t n, std::int64_t m, std::int64_t e) { return n * (n + 1) - (2 * n + e) * m; }

struct JCache {
  std::shared_mutex mutex;
  std::map<std::pair<std::int64_t, std::int64_t>, QSeries> entries;
};

JCache& j_cache() {
  static JCache cache;
  return cache;
}

}  // namespace

QSeries q_pochhammer(std::int64_t n, HalfExp order) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "q-Pochhammer index must be nonnegative");
  QSeries out = QSeries::one(order);
  for (std::int64_t i = 1; i <= n; ++i) {
    std::vector<mpz_class> f(static_cast<std::size_t>(2 * i + 1));
    f[0] = 1;
    f.back() = -1;
    out = out * QSeries::from_coefficients(HalfExp(0), std::move(f));
  }
  return out.truncated(order);
}

QSeries tet_index(Charges ch, HalfExp order) {
  require_finite(order, "tet_index");
  const std::int64_t m = ch.m;
  const std::int64_t e = ch.e;
  const std::int64_t n0 = std::max<std::int64_t>(0, -e);

  std::vector<std::pair<std::int64_t, std::int64_t>> live;  // (n, half-exponent)
  for (std::int64_t n = n0;; ++n) {
    std::int64_t h = term_exponent(n, m, e);
    if (h < order.value) live.emplace_back(n, h);
    else if (n >= std::abs(m)) break;
  }
  if (live.empty()) return QSeries::zero(order);

  std::int64_t lo = live.front().second;
  for (auto& [n, h] : live) lo = std::min(lo, h);
  std::size_t width = static_cast<std::size_t>(order.value - lo);
  std::vector<mpz_class> acc(width);

  // inv_small = 1/(q;q)_n, inv_big = 1/(q;q)_{n+e}, both in whole q-units.
  std::size_t qlen = 0;
  for (auto& [n, h] : live) qlen = std::max(qlen, static_cast<std::size_t>((order.value - h + 1) / 2));
  Poly inv_small(qlen), inv_big(qlen);
  if (qlen > 0) {
    inv_small[0] = 1;
    inv_big[0] = 1;
  }
  std::int64_t small_at = 0;
  std::int64_t big_at = 0;
  for (auto& [n, h] : live) {
    while (small_at < n) divide_by_one_minus(inv_small, ++small_at);
    while (big_at < n + e) divide_by_one_minus(inv_big, ++big_at);
    std::size_t need = static_cast<std::size_t>((order.value - h + 1) / 2);
    Poly term = product(inv_small, inv_big, need);
    bool negative = (n % 2) != 0;
    for (std::size_t k = 0; k < term.size(); ++k) {
      std::size_t at = static_cast<std::size_t>(h - lo) + 2 * k;
      if (at >= width) break;
      if (negative) acc[at] -= term[k];
      else acc[at] += term[k];
    }
  }
  return QSeries::from_coefficients(HalfExp(lo), std::move(acc), order);
}

QSeries j_index_direct(Triple t, HalfExp order) {
  require_finite(order, "j_index");
  auto pre = neg_half_power(-t.b);
  QSeries base = tet_index({t.b - t.c, t.a - t.b}, order - pre.exp);
  return base.shifted(pre.exp).scaled(pre.sign);
}

QSeries j_index(Triple t, HalfExp order) {
  require_finite(order, "j_index");
  std::array<std::int64_t, 3> v{t.a, t.b, t.c};
  std::sort(v.begin(), v.end());
  const std::int64_t s = v[0];
  const std::int64_t lo = v[1] - s;
  const std::int64_t hi = v[2] - s;
  // J(a,b,c) = (-q^{1/2})^{-s} J(0, lo, hi) = (-q^{1/2})^{-s} I(-hi, lo).
  auto pre = neg_half_power(-s);
  HalfExp need = order - pre.exp;
  auto key = std::make_pair(lo, hi);
  JCache& cache = j_cache();
  QSeries base;
  bool found = false;
  {
    std::shared_lock lock(cache.mutex);
    auto it = cache.entries.find(key);
    if (it != cache.entries.end() && it->second.order() >= need) {
      base = it->second.truncated(need);
      found = true;
    }
  }
  if (!found) {
    QSeries fresh = tet_index({-hi, lo}, need);
    std::unique_lock lock(cache.mutex);
    auto& slot = cache.entries[key];
    if (slot.order() < fresh.order() || slot.is_exact()) slot = fresh;
    base = std::move(fresh);
  }
  return base.shifted(pre.exp).scaled(pre.sign);
}

void clear_j_cache() {
  JCache& cache = j_cache();
  std::unique_lock lock(cache.mutex);
  cache.entries.clear();
}

HalfExp j_degree(Triple t) {
  std::int64_t m = std::min({t.a, t.b, t.c});
  std::int64_t x = t.a - m, y = t.b - m, z = t.c - m;
  return HalfExp(x * y + y * z + z * x - m);
}

QSeries j_product(HalfExp shift, std::span<const Triple> factors, HalfExp order) {
  std::vector<HalfExp> deg(factors.size());
  HalfExp total = shift;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    deg[i] = j_degree(factors[i]);
    total += deg[i];
  }
  if (total >= order) return QSeries::zero(order);
  QSeries out = QSeries::monomial(1, shift);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    HalfExp others = total - deg[i];
    out = out * j_index(factors[i], order - others);
  }
  return out.truncated(order);
}

namespace {

// Sums q^k * prod J over k in Z. Walks k = 0, 1, 2, ... and k = -1, -2, ...
// separately and leaves a side after three consecutive k whose leading
// exponent is already at or beyond the order.
template <typename Factors>
QSeries sum_over_k(HalfExp order, Factors&& factors) {
  QSeries total = QSeries::zero(order);
  for (int dir : {1, -1}) {
    int quiet = 0;
    for (std::int64_t k = dir > 0 ? 0 : -1; quiet < 3; k += dir) {
      auto t = factors(k);
      QSeries term = j_product(HalfExp(2 * k), t, order);
      if (term.is_zero()) ++quiet;
      else quiet = 0;
      total += term;
    }
  }
  return total;
}

}  // namespace

QSeries pentagon_sum(const std::array<std::int64_t, 6>& x, HalfExp order) {
  require_finite(order, "pentagon_sum");
  const auto [a, b, c, d, e, f] = x;
  return sum_over_k(order, [&](std::int64_t k) {
    return std::array<Triple, 3>{Triple{k, a + f, b + d}, Triple{k, a + e, c + d}, Triple{k, b + e, c + f}};
  });
}

QSeries quadratic_sum(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, HalfExp order) {
  require_finite(order, "quadratic_sum");
  return sum_over_k(order, [&](std::int64_t k) {
    return std::array<Triple, 2>{Triple{a + k, c, d}, Triple{b + k, c, d}};
  });
}

double tet_index_numeric(Charges ch, double q, double tol) {
  if (!(q > 0.0)) throw Error(ErrorKind::InvalidArgument, "q must be positive");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  if (q == 1.0) throw Error(ErrorKind::NonConvergent, "the defining sum has poles at q = 1");
  const std::int64_t m = ch.m;
  const std::int64_t e = ch.e;
  const std::int64_t n0 = std::max<std::int64_t>(0, -e);
  const double lq = std::log(q);

  // Leading term in log form: sign * exp(log_mag).
  double log_mag = 0.5 * static_cast<double>(term_exponent(n0, m, e)) * lq;
  int sign = (n0 % 2 == 0) ? 1 : -1;
  auto absorb = [&](std::int64_t i) {
    double f = 1.0 - std::pow(q, static_cast<double>(i));
    log_mag -= std::log(std::fabs(f));
    if (f < 0) sign = -sign;
  };
  for (std::int64_t i = 1; i <= n0; ++i) absorb(i);
  for (std::int64_t i = 1; i <= n0 + e; ++i) absorb(i);

  double term = sign * std::exp(log_mag);
  double sum = term;
  int small = std::fabs(term) < tol ? 1 : 0;
  const std::int64_t vertex = std::abs(m) + std::abs(e);
  constexpr std::int64_t kMaxTerms = 10000;
  for (std::int64_t n = n0 + 1; n - n0 < kMaxTerms; ++n) {
    double ratio = -std::pow(q, static_cast<double>(n - m)) /
                   ((1.0 - std::pow(q, static_cast<double>(n))) * (1.0 - std::pow(q, static_cast<double>(n + e))));
    term *= ratio;
    sum += term;
    small = std::fabs(term) < tol ? small + 1 : 0;
    if (small >= 3 && n >= vertex) return sum;
  }
  throw Error(ErrorKind::NonConvergent, "no convergence within 10000 terms");
}

}  // namespace index3d
