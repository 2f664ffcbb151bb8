#include "index3d/indexer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "index3d/errors.hpp"
#include "index3d/tetindex.hpp"

namespace index3d {

namespace {

using Point = std::vector<std::int64_t>;

// All k in Z^d with max |k_i| == r, in lexicographic order.
std::vector<Point> shell(std::size_t d, std::int64_t r) {
  std::vector<Point> out;
  if (d == 0) {
    if (r == 0) out.emplace_back();
    return out;
  }
  Point k(d, -r);
  while (true) {
    bool on_shell = std::any_of(k.begin(), k.end(), [r](std::int64_t x) { return std::abs(x) == r; });
    if (on_shell) out.push_back(k);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (k[i] < r) {
        ++k[i];
        break;
      }
      k[i] = -r;
      if (i == 0) return out;
    }
  }
}

struct Summand {
  bool contributes = false;
  QSeries value;
};

template <typename Fn>
std::vector<Summand> evaluate_all(const std::vector<Point>& points, unsigned threads, Fn&& fn) {
  std::vector<Summand> out(points.size());
  if (threads <= 1 || points.size() < 2) {
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = fn(points[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = next++; i < points.size(); i = next++) out[i] = fn(points[i]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// Walks L-infinity shells of Z^d outward and sums the summands in a fixed order,
// so the result does not depend on the thread count.
template <typename Fn>
IndexResult walk_shells(std::size_t d, const SummationOptions& opts, Fn&& fn) {
  if (opts.shell_window < 1 || opts.max_radius < 1) {
    throw Error(ErrorKind::InvalidArgument, "shell_window and max_radius must be at least 1");
  }
  if (opts.order.is_exact()) throw Error(ErrorKind::InvalidArgument, "the index needs a finite order");
  IndexResult res;
  res.series = QSeries::zero(opts.order);
  std::int64_t quiet = 0;
  for (std::int64_t r = 0;; ++r) {
    if (r > opts.max_radius) {
      throw Error(ErrorKind::RadiusExceeded, "lattice points still contribute at radius " +
                                                 std::to_string(opts.max_radius) +
                                                 "; the data may not be 1-efficient or the order is too high");
    }
    std::vector<Point> pts = shell(d, r);
    std::vector<Summand> vals = evaluate_all(pts, opts.threads, fn);
    bool any = false;
    for (auto& v : vals) {
      if (!v.contributes) continue;
      any = true;
      ++res.contributing;
      res.series += v.value;
    }
    res.radius = r;
    quiet = any ? 0 : quiet + 1;
    if (quiet >= opts.shell_window || pts.empty()) break;
  }
  return res;
}

Triangulation with_edges(const Triangulation& tri) {
  if (!tri.independent_edges.empty() || tri.summation_rank() == 0) return tri;
  Triangulation t = tri;
  t.independent_edges = select_independent_edges(tri);
  return t;
}

std::vector<Triple> triples_of(const ExponentVector& s) {
  std::vector<Triple> t(s.num_tetrahedra());
  for (std::size_t j = 0; j < t.size(); ++j) t[j] = s.triple(j);
  return t;
}

std::int64_t total(const Point& k) {
  std::int64_t s = 0;
  for (auto x : k) s += x;
  return s;
}

void require_lattice(const Triangulation& tri, const ExponentVector& s) {
  if (s.num_tetrahedra() != tri.num_tetrahedra) {
    throw Error(ErrorKind::LengthMismatch, "monomial over " + std::to_string(s.num_tetrahedra()) +
                                               " tetrahedra for a triangulation with " +
                                               std::to_string(tri.num_tetrahedra));
  }
}

}  // namespace

IndexResult index_monomial(const Triangulation& tri_in, const ExponentVector& s0, const SummationOptions& opts) {
  require_lattice(tri_in, s0);
  Triangulation tri = with_edges(tri_in);
  const HalfExp order = opts.order;
  return walk_shells(tri.independent_edges.size(), opts, [&](const Point& k) {
    ExponentVector sk = edge_combination(tri, k);
    HalfExp shift(2 * total(k) + omega(s0, sk));
    std::vector<Triple> t = triples_of(sk - s0);
    HalfExp deg = shift;
    for (const auto& x : t) deg += j_degree(x);
    if (deg >= order) return Summand{};
    return Summand{true, j_product(shift, t, order)};
  });
}

IndexResult index_element(const Triangulation& tri_in, const TorusElement& u, const SummationOptions& opts) {
  Triangulation tri = with_edges(tri_in);
  IndexResult res;
  res.series = QSeries::zero(opts.order);
  for (const auto& [k, c] : u.terms()) {
    require_lattice(tri, k);
    if (c.order() < opts.order) {
      throw Error(ErrorKind::InsufficientOrder, "coefficient of " + k.to_string() + " is known only below q^(" +
                                                    std::to_string(c.order().value) + "/2)");
    }
    if (c.is_zero()) continue;
    SummationOptions inner = opts;
    inner.order = opts.order - c.min_exp();
    IndexResult part = index_monomial(tri, k, inner);
    res.series += (c * part.series).truncated(opts.order);
    res.radius = std::max(res.radius, part.radius);
    res.contributing += part.contributing;
  }
  return res;
}

IndexResult index_element_edge_sum(const Triangulation& tri_in, const TorusElement& u, const SummationOptions& opts) {
  Triangulation tri = with_edges(tri_in);
  for (const auto& [k, c] : u.terms()) {
    require_lattice(tri, k);
    if (c.order() < opts.order) throw Error(ErrorKind::InsufficientOrder, "coefficient known below the requested order");
  }
  const HalfExp order = opts.order;
  return walk_shells(tri.independent_edges.size(), opts, [&](const Point& k) {
    // (q E_1^{-1})^{k_1} ... (q E_d^{-1})^{k_d}; the edge monomials commute.
    ExponentVector sk = edge_combination(tri, k);
    TorusElement edges = TorusElement::weyl(-sk, QSeries::monomial(1, HalfExp(2 * total(k))));
    TorusElement v = edges * u;
    Summand out{false, QSeries::zero(order)};
    for (const auto& [s, c] : v.terms()) {
      if (c.is_zero()) continue;
      std::vector<Triple> t = triples_of(-s);
      HalfExp deg = c.min_exp();
      for (const auto& x : t) deg += j_degree(x);
      if (deg >= order) continue;
      out.contributes = true;
      out.value += (c * j_product(HalfExp(0), t, order - c.min_exp())).truncated(order);
    }
    return out;
  });
}

ExponentVector dgg_exponent(const Triangulation& tri, std::size_t cusp, std::int64_t twice_m, std::int64_t e) {
  if (cusp >= tri.num_cusps) throw Error(ErrorKind::InvalidArgument, "cusp " + std::to_string(cusp) + " out of range");
  ExponentVector twice = -twice_m * tri.longitude_rows[cusp] + (2 * e) * tri.meridian_rows[cusp];
  std::vector<std::int64_t> v(twice.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (twice[i] % 2 != 0) {
      throw Error(ErrorKind::NonIntegralCharge, "m = " + std::to_string(twice_m) + "/2 gives a non-integral exponent at entry " +
                                                    std::to_string(i));
    }
    v[i] = twice[i] / 2;
  }
  return ExponentVector(std::move(v));
}

IndexResult dgg_index(const Triangulation& tri, std::size_t cusp, std::int64_t twice_m, std::int64_t e,
                      const SummationOptions& opts) {
  return index_monomial(tri, dgg_exponent(tri, cusp, twice_m, e), opts);
}

double index_monomial_numeric(const Triangulation& tri_in, const ExponentVector& s0, double q, double tol,
                              std::int64_t shell_window, std::int64_t max_radius) {
  require_lattice(tri_in, s0);
  Triangulation tri = with_edges(tri_in);
  const double root = std::sqrt(q);
  // J(a,b,c) = (-q^{1/2})^{-s} I(-hi, lo). Above q = 1 the direct sum for large
  // charges cancels catastrophically, so I(-hi, lo)(q) is taken as
  // I(hi, -lo)(1/q) = (-q^{-1/2})^{hi} I(-hi, hi - lo)(1/q), all terms positive-degree.
  auto j_numeric = [&](Triple t) {
    std::int64_t v[3] = {t.a, t.b, t.c};
    std::sort(v, v + 3);
    const std::int64_t lo = v[1] - v[0], hi = v[2] - v[0];
    double pre = std::pow(-root, static_cast<double>(-v[0]));
    if (q < 1.0) return pre * tet_index_numeric({-hi, lo}, q, tol * 1e-3);
    return pre * std::pow(-1.0 / root, static_cast<double>(hi)) * tet_index_numeric({-hi, hi - lo}, 1.0 / q, tol * 1e-3);
  };
  double sum = 0.0;
  std::int64_t quiet = 0;
  for (std::int64_t r = 0; r <= max_radius; ++r) {
    std::vector<Point> pts = shell(tri.independent_edges.size(), r);
    double shell_mag = 0.0;
    for (const auto& k : pts) {
      ExponentVector sk = edge_combination(tri, k);
      double term = std::pow(root, static_cast<double>(2 * total(k) + omega(s0, sk)));
      ExponentVector s = sk - s0;
      for (std::size_t j = 0; j < s.num_tetrahedra() && term != 0.0; ++j) term *= j_numeric(s.triple(j));
      sum += term;
      shell_mag += std::fabs(term);
    }
    quiet = shell_mag < tol ? quiet + 1 : 0;
    if (quiet >= shell_window || pts.empty()) return sum;
  }
  throw Error(ErrorKind::RadiusExceeded, "numeric lattice sum did not settle within the radius cap");
}

bool RelationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.passed; });
}

std::string RelationReport::to_string() const {
  std::string out;
  for (const auto& c : checks) {
    out += (c.passed ? "pass  " : "FAIL  ") + c.relation + " " + std::to_string(c.index);
    if (!c.passed) out += "  first difference at q^(" + std::to_string(c.first_difference.value) + "/2)";
    out += "\n";
  }
  return out;
}

RelationReport check_quotient_relations(const Triangulation& tri_in, const ExponentVector& s0,
                                        const SummationOptions& opts) {
  require_lattice(tri_in, s0);
  Triangulation tri = with_edges(tri_in);
  const std::size_t n = tri.num_tetrahedra;
  const HalfExp order = opts.order;
  RelationReport rep;
  rep.order = order;
  TorusElement base = TorusElement::weyl(s0);
  QSeries value = index_monomial(tri, s0, opts).series;

  auto compare = [&](std::string relation, std::size_t index, const TorusElement& lhs, const QSeries& rhs) {
    QSeries got = index_element(tri, lhs, opts).series;
    HalfExp diff = first_difference(got, rhs, order);
    rep.checks.push_back({std::move(relation), index, diff >= order, diff});
  };

  for (std::size_t i = 0; i < tri.edge_rows.size(); ++i) {
    compare("edge", i, TorusElement::weyl(tri.edge_rows[i]) * base, value.shifted(HalfExp(2)));
  }
  for (std::size_t j = 0; j < n; ++j) {
    compare("central", j, TorusElement::weyl(ExponentVector::tetrahedron(n, j)) * base, -value.shifted(HalfExp(1)));
  }
  for (std::size_t j = 0; j < n; ++j) {
    TorusElement lag = TorusElement::weyl(-ExponentVector::unit(n, j, Quad::A)) +
                       TorusElement::weyl(ExponentVector::unit(n, j, Quad::C)) - TorusElement::unit(n);
    compare("lagrangian", j, base * lag, QSeries::zero());
  }
  return rep;
}

}  // namespace index3d
