#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "index3d/indexer.hpp"

namespace index3d {

enum class MoveKind { ThreeTwo, TwoZero };

// A 3-2 or 2-0 move between two triangulations, read from the smaller side.
//
// For 3-2, removed_tets names the source tetrahedra (z, w) and inserted_tets
// the target tetrahedra (x, y, v). For 2-0, inserted_tets names the two
// target tetrahedra that have no source counterpart. fixed_map pairs every
// remaining source tetrahedron with its target tetrahedron.
//
// quad_perms optionally relabels the quads of target tetrahedra after the
// move: entry (t, p) sends slot s of tetrahedron t to slot p[s].
struct MoveDescriptor {
  MoveKind kind = MoveKind::ThreeTwo;
  std::string source_path;
  std::string target_path;
  std::vector<std::size_t> removed_tets;
  std::vector<std::size_t> inserted_tets;
  std::vector<std::pair<std::size_t, std::size_t>> fixed_map;
  std::vector<std::pair<std::size_t, std::array<std::size_t, 3>>> quad_perms;
};

// Paths inside the file are resolved relative to the file's directory.
MoveDescriptor read_move_descriptor(const std::string& path);
MoveDescriptor parse_move_descriptor(std::string_view json_text, const std::string& base_dir = ".");

// Integer matrix taking source exponent vectors to target exponent vectors.
class MoveMap {
 public:
  MoveMap(std::size_t source_tets, std::size_t target_tets);

  std::size_t source_size() const { return cols_.size(); }
  std::size_t target_size() const { return target_size_; }
  // Image of the i-th source basis vector.
  const ExponentVector& column(std::size_t i) const { return cols_[i]; }
  ExponentVector& column(std::size_t i) { return cols_[i]; }

  ExponentVector apply(const ExponentVector& u) const;

 private:
  std::size_t target_size_;
  std::vector<ExponentVector> cols_;
};

// Builds the exponent map and checks omega(Lu, Lv) = omega(u, v) on all pairs
// of source basis vectors. Throws InvalidDescriptor or SymplecticNotPreserved.
MoveMap build_move_map(const MoveDescriptor& desc, std::size_t source_tets, std::size_t target_tets);

// Termwise transport of exponents; coefficients are untouched.
TorusElement apply_move(const MoveMap& map, const TorusElement& u);

struct CompatibilitySample {
  std::string label;
  QSeries source_index;
  QSeries target_index;
  bool passed = false;
  HalfExp first_difference{};
};

struct CompatibilityReport {
  std::vector<CompatibilitySample> samples;
  bool all_passed() const;
  std::string to_string() const;
};

// For each sample u over the source, compares I_source(u) with I_target(L u).
CompatibilityReport verify_index_compatibility(const Triangulation& source, const Triangulation& target,
                                               const MoveMap& map, const std::vector<TorusElement>& samples,
                                               const SummationOptions& opts);

}  // namespace index3d
