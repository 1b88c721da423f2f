#pragma once

// Tower constructions: shift, image / cokernel of the structure maps, level-
// split null extensions, finite products, the representable towers A(n), and
// the truncated 1 - F operator on a finite window of levels.

#include <cstddef>
#include <span>
#include <vector>

#include "dlim/tower.hpp"

namespace dlim {

struct ShiftResult {
  Tower shifted;          // S^sh_i = S_{i+1}
  TowerMorphism tilde_f;  // S^sh -> S, f_i at level i
};

ShiftResult shift(const Tower& s);

struct ImageTowerResult {
  Tower image;              // I(S)_i = f_i(S_{i+1})
  TowerMorphism inclusion;  // I(S) -> S
  Tower cokernel;           // S^1 = S / I(S), always null
  TowerMorphism projection; // S -> S^1
};

ImageTowerResult image_tower(const Tower& s);

/// S'_i = N_i + S_i with structure map (n, s) -> (g_i(n) + psi_i(s), f_i(s)).
/// `psi[i] : S_{i+1} -> N_i` for i < W and psi[W] is the tail map, where
/// W = psi.size() - 1 must reach both tails. Throws std::invalid_argument on
/// a shape mismatch or when N is not null.
Tower null_extension(const Tower& s, const Tower& n, std::span<const GroupMap> psi);

/// Levelwise direct sum; the empty family gives the zero tower.
Tower limit_of_towers(std::span<const Tower> family);

/// A at levels 0..n joined by identities, zero above.
Tower a_n_tower(const FgAbGroup& a, std::size_t n);

struct AdjunctionReport {
  std::size_t tower_morphisms = 0;  // |Hom(A(n), S)|
  std::size_t group_maps = 0;       // |Hom(A, S_n)|
  bool injective = false;           // phi -> phi_n is one-to-one
  bool squares_commute = false;     // phi_i == f_i o phi_{i+1} for i < n

  bool holds() const {
    return injective && squares_commute && tower_morphisms == group_maps;
  }
};

/// Enumerates Hom(A(n), S) level by level and compares with Hom(A, S_n).
/// A must be finite; throws CapExceeded past `cap` homomorphisms per level.
AdjunctionReport adjunction_check(const FgAbGroup& a, std::size_t n, const Tower& s,
                                  std::size_t cap = kDefaultEnumerationCap);

struct WindowOperator {
  DirectSum product;   // S_0 + ... + S_{W-1}
  GroupMap f;          // pr_j F = f_j pr_{j+1}, and pr_{W-1} F = 0
  GroupMap one_minus_f;
  GroupMap inverse;    // sum of F^k for k < W
};

/// Throws std::domain_error when a level in the window is infinite.
WindowOperator one_minus_f_window(const Tower& s, std::size_t width);

}  // namespace dlim
