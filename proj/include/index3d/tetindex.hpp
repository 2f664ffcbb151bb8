#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "index3d/qseries.hpp"

namespace index3d {

struct Charges {
  std::int64_t m = 0;
  std::int64_t e = 0;
};

struct Triple {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  friend bool operator==(const Triple&, const Triple&) = default;
};

// (q;q)_n truncated at `order` (half-units).
QSeries q_pochhammer(std::int64_t n, HalfExp order);

// Tetrahedron index I(m, e) to the given finite order.
QSeries tet_index(Charges ch, HalfExp order);

// J(a,b,c) = (-q^{1/2})^{-b} I(b-c, a-b), evaluated literally from that formula.
QSeries j_index_direct(Triple t, HalfExp order);

// J(a,b,c) through its translation-normalized, permutation-sorted form.
// Results are memoized in a process-wide thread-safe cache.
QSeries j_index(Triple t, HalfExp order);

// Leading exponent of J(a,b,c) in half-units; its coefficient is (-1)^min(a,b,c).
HalfExp j_degree(Triple t);

// q^{shift/2} * prod J(t_i), known below `order`. Each factor is requested only
// as far as the degrees of the others allow. Returns a zero series when the
// combined leading exponent is already at or beyond `order`.
QSeries j_product(HalfExp shift, std::span<const Triple> factors, HalfExp order);

// Direct floating-point summation of I(m, e) at a real q with 0 < q != 1.
// Stops once three consecutive terms fall below tol past the exponent vertex.
double tet_index_numeric(Charges ch, double q, double tol);

// Left side of the pentagon identity for (a,b,c,d,e,f):
//   sum_k q^k J(k, a+f, b+d) J(k, a+e, c+d) J(k, b+e, c+f),
// which should equal J(a,b,c) J(d,e,f).
QSeries pentagon_sum(const std::array<std::int64_t, 6>& x, HalfExp order);

// sum_k q^k J(a+k, c, d) J(b+k, c, d), which should equal q^{-a} when a == b and 0 otherwise.
QSeries quadratic_sum(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, HalfExp order);

void clear_j_cache();

}  // namespace index3d
