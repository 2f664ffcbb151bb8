#pragma once

#include <string_view>

#include "index3d/triangulation.hpp"

namespace index3d::fixtures {

// Two-tetrahedron triangulation of the figure-eight knot complement.
Triangulation figure_eight();

// Quantum trace of the knot K_b in the figure-eight complement, tetrahedra numbered from 1.
inline constexpr std::string_view kKbElement = "-q^(-1/2)*(Z1^-1*Zpp2 + Zpp1*Z2^-1 + Zpp1*Zpp2)";
// Quantum trace of the 2-parallel of K_b.
inline constexpr std::string_view kKb2Element =
    "q^-2*Zp1^-1*Zp2^-1 + q^-1*(Zp1*Zp2^-1 + Zp1^-1*Zp2) - (q^-1 + q^-2)*(Zp1^-1 + Zp2^-1) + q^-2 + 1";

}  // namespace index3d::fixtures
