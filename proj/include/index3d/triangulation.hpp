#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "index3d/errors.hpp"
#include "index3d/qtorus.hpp"

namespace index3d {

// Gluing data of an ideal triangulation with N tetrahedra and r cusps.
//
// Edge rows count how often each quad (Z, Z', Z'') of each tetrahedron sits
// around an edge. Peripheral rows are in the units of the even torus, where a
// meridian/longitude pair satisfies omega(L, M) = 2.
struct Triangulation {
  std::string name;
  std::size_t num_tetrahedra = 0;
  std::size_t num_cusps = 0;
  std::vector<ExponentVector> edge_rows;
  std::vector<ExponentVector> meridian_rows;
  std::vector<ExponentVector> longitude_rows;
  // Filled in by validate() when the file does not supply it.
  std::vector<std::size_t> independent_edges;
  // Asserted by whoever produced the data; never checked here.
  bool one_efficient = false;
  bool non_peripheral_z2_homology = false;

  std::size_t summation_rank() const { return num_tetrahedra - num_cusps; }
};

// JSON document: name, num_tetrahedra, num_cusps, edge_rows, meridian_rows,
// longitude_rows, optional independent_edges, one_efficient and optional
// non_peripheral_z2_homology. Throws ParseError on malformed input.
Triangulation parse_triangulation(std::string_view json_text);
Triangulation read_triangulation(const std::string& path);
std::string triangulation_to_json(const Triangulation& tri);

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  // Error kinds of all failed check groups, in check order.
  std::vector<ErrorKind> failures;
  std::vector<std::size_t> independent_edges;

  bool ok() const { return failures.empty(); }
  std::string to_string() const;
};

// Runs every check without throwing. Checks run in the order
// NegativeQuadCount, SymplecticViolation, ColumnSumViolation, RankDeficient,
// HomologyHypothesisViolated.
ValidationReport validate_report(const Triangulation& tri);

// Throws the first failure of validate_report and fills independent_edges.
void validate(Triangulation& tri);
Triangulation load_and_validate(const std::string& path);

// Rank of a set of rows after quotienting by the tetrahedron vectors (1,1,1).
std::size_t rank_mod_tetrahedra(std::span<const ExponentVector> rows);

// First lexicographic maximal subset of edge rows independent modulo the
// tetrahedron vectors.
std::vector<std::size_t> select_independent_edges(const Triangulation& tri);

// S(k) = sum_i k_i E_{independent_edges[i]}.
ExponentVector edge_combination(const Triangulation& tri, std::span<const std::int64_t> k);

// chi(S(k)) = -2 sum_i k_i.
std::int64_t chi_of_combination(std::span<const std::int64_t> k);

struct NormalizedSurface {
  ExponentVector s_star;
  std::vector<std::int64_t> shifts;
};

// Subtracts the per-tetrahedron minimum so that every triple has minimum 0.
NormalizedSurface normalize_surface(const ExponentVector& s);

// Leading half-exponent of the index summand indexed by k.
HalfExp summand_degree(const Triangulation& tri, const ExponentVector& s0, std::span<const std::int64_t> k);

}  // namespace index3d
