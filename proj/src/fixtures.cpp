#include "index3d/fixtures.hpp"

namespace index3d::fixtures {

namespace {

constexpr std::string_view kFigureEight = R"json({
  "name": "4_1 (two tetrahedra)",
  "num_tetrahedra": 2,
  "num_cusps": 1,
  "edge_rows": [[2, 1, 0, 2, 1, 0], [0, 1, 2, 0, 1, 2]],
  "meridian_rows": [[1, 0, 0, 0, 0, -1]],
  "longitude_rows": [[0, 0, 0, 2, 0, -2]],
  "one_efficient": true
})json";

}  // namespace

Triangulation figure_eight() {
  Triangulation tri = parse_triangulation(kFigureEight);
  validate(tri);
  return tri;
}

}  // namespace index3d::fixtures
