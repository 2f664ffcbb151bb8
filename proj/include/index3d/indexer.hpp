#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "index3d/qtorus.hpp"
#include "index3d/triangulation.hpp"

namespace index3d {

struct SummationOptions {
  HalfExp order{20};
  // Consecutive L-infinity shells without a contributing lattice point before stopping.
  std::int64_t shell_window = 3;
  std::int64_t max_radius = 200;
  // Worker threads for summand evaluation; 0 or 1 runs inline.
  unsigned threads = 1;
};

struct IndexResult {
  QSeries series;
  // Largest shell radius visited.
  std::int64_t radius = 0;
  // Number of lattice points whose summand reached below the order.
  std::size_t contributing = 0;
  std::string termination = "heuristic";
};

// Index of the Weyl monomial [Z^{s0}]: the lattice sum over k of
// q^{sum k} q^{omega(s0, S(k))/2} prod_j J(triple_j(S(k) - s0)).
// Throws RadiusExceeded when the shells do not empty out within max_radius.
IndexResult index_monomial(const Triangulation& tri, const ExponentVector& s0, const SummationOptions& opts);

// Linear extension to torus elements. Throws InsufficientOrder if a coefficient
// is known less far than opts.order.
IndexResult index_element(const Triangulation& tri, const TorusElement& u, const SummationOptions& opts);

// Same value through the edge-monomial form: the sum over k of the per-tetrahedron
// index of (q E_1^{-1})^{k_1} ... u, with every product taken in the torus.
IndexResult index_element_edge_sum(const Triangulation& tri, const TorusElement& u, const SummationOptions& opts);

// S0 = -m L + e M for the given cusp, with m = twice_m / 2.
// Throws NonIntegralCharge when S0 is not integral.
ExponentVector dgg_exponent(const Triangulation& tri, std::size_t cusp, std::int64_t twice_m, std::int64_t e);
IndexResult dgg_index(const Triangulation& tri, std::size_t cusp, std::int64_t twice_m, std::int64_t e,
                      const SummationOptions& opts);

// Evaluates the index of [Z^{s0}] at a real q with each tetrahedron factor
// computed by direct floating-point summation. Used to compare the q > 1 regime
// against series evaluated at 1/q.
double index_monomial_numeric(const Triangulation& tri, const ExponentVector& s0, double q, double tol,
                              std::int64_t shell_window = 3, std::int64_t max_radius = 60);

struct RelationCheck {
  // "edge", "central" or "lagrangian".
  std::string relation;
  // Edge index or tetrahedron index.
  std::size_t index = 0;
  bool passed = false;
  // First exponent where the two sides differ; equals the order when they agree.
  HalfExp first_difference{};
};

struct RelationReport {
  std::vector<RelationCheck> checks;
  HalfExp order{};

  bool all_passed() const;
  std::string to_string() const;
};

// The three families of relations the index must respect, at [Z^{s0}]:
//   I(E_i [Z^{s0}]) = q I([Z^{s0}])                 for every edge row
//   I([Z_j Z'_j Z''_j][Z^{s0}]) = -q^{1/2} I([Z^{s0}])   for every tetrahedron
//   I([Z^{s0}](Z_j^{-1} + Z''_j - 1)) = 0                for every tetrahedron
RelationReport check_quotient_relations(const Triangulation& tri, const ExponentVector& s0,
                                        const SummationOptions& opts);

}  // namespace index3d
