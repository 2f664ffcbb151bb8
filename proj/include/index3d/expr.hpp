#pragma once

#include <string>
#include <string_view>

#include "index3d/qtorus.hpp"

namespace index3d {

// Expression language for quantum-torus elements.
//
//   element := ['+'|'-'] product (('+'|'-') product)*
//   product := factor ('*' factor)*
//   factor  := atom ['^' power]
//   atom    := integer | 'q' | generator | '(' element ')'
//   generator := ('Z' | 'Zp' | 'Zpp') tetrahedron      tetrahedra are numbered from 1
//   power   := integer | '-' integer | '(' ['-'] integer ['/2'] ')'
//
// Z, Zp, Zpp stand for Z_j, Z'_j, Z''_j. Within a product, each run of adjacent
// generator factors is read as one Weyl-ordered monomial, so Z1^-1*Zpp2 means
// [Z_1^{-1} Z''_2]. Runs separated by a parenthesized factor are multiplied in
// the quantum torus from left to right. Integers and powers of q are central
// and are collected into the coefficient. Only q may carry a half-integer power.
//
// Examples: "1", "Zpp1*Zpp2", "-q^(-1/2)*(Z1^-1*Zpp2 + Zpp1*Z2^-1 + Zpp1*Zpp2)".
TorusElement parse_element(std::string_view text, std::size_t num_tetrahedra);

// Renders an element in the same language. Exact coefficients are expanded into
// one product per monomial of q; truncated coefficients are written in
// parentheses with their O-term and cannot be parsed back.
std::string format_element(const TorusElement& u);

}  // namespace index3d
