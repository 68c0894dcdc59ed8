#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ipa/matrix.hpp"

namespace ipa {

bool is_odd_prime(int p);

// Array-based binary matrix for an odd prime p: three block rows
// [I I ... I; I P P^2 ...; I P^2 P^4 ...] of p x p circulant shifts,
// giving a 3p x p^2 matrix with column weight 3 and row weight p.
MeasurementMatrix array_ldpc(int p);

// Lift of a small nonnegative base matrix: each entry w becomes a
// lift x lift circulant whose first row carries w ones at offsets drawn
// without replacement from a seeded generator; every following row is the
// row above shifted right by one. Entry 0 becomes a zero block.
// Same (proto, lift, seed) always yields the identical matrix.
MeasurementMatrix protograph_lift(const std::vector<std::vector<int>>& proto,
                                  int lift, std::uint64_t seed);

// Small bundled example graphs used throughout the tests and docs, together
// with their named variable-node sets (0-based indices).
//   fig1: 3 checks x 7 vars, sets "T" = {0,1}
//   fig2: 3 checks x 7 vars, sets "T" = {1,2,5}
//   fig5: 4 checks x 6 vars, sets "V_S" = {0,1,2,3}
struct BuiltinInstance {
  std::string name;
  MeasurementMatrix matrix;
  std::map<std::string, std::vector<int>> node_sets;
};

BuiltinInstance builtin_instance(std::string_view name);

}  // namespace ipa
