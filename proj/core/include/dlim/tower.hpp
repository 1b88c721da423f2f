#pragma once

// Inverse sequences S_0 <- S_1 <- S_2 <- ... of finitely generated abelian
// groups, represented as a finite prefix followed by a constant tail.
//
// Internally a tower of prefix length W stores W + 1 groups and W + 1 maps:
// levels S_0 .. S_{W-1} and the tail group T = S_W = S_{W+1} = ..., maps
// f_0 .. f_{W-1} (f_{W-1} : T -> S_{W-1} connects the tail) and the tail
// endomorphism e = f_W = f_{W+1} = .... A zero tail is the tail T = 0.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dlim/abelian.hpp"

namespace dlim {

struct ZeroTail {
  friend bool operator==(const ZeroTail&, const ZeroTail&) = default;
};

struct ConstantEndoTail {
  FgAbGroup group;
  GroupMap endo;
  friend bool operator==(const ConstantEndoTail&, const ConstantEndoTail&) = default;
};

using TailSpec = std::variant<ZeroTail, ConstantEndoTail>;

class Tower {
 public:
  /// `prefix_maps[i] : prefix[i+1] -> prefix[i]`; `tail_connection` maps the
  /// tail group into the last prefix level and may be omitted only when the
  /// prefix is empty or the tail is zero.
  Tower(std::vector<FgAbGroup> prefix, std::vector<GroupMap> prefix_maps, TailSpec tail,
        std::optional<GroupMap> tail_connection = std::nullopt);

  /// From the internal W + 1 levels / W + 1 maps layout described above.
  static Tower from_levels(std::vector<FgAbGroup> levels, std::vector<GroupMap> maps);

  static Tower zero();
  static Tower constant(const GroupMap& endo);
  /// S(A): A <- A <- A ... with every map a -> m a.
  static Tower s_of_a(const FgAbGroup& group, const Integer& m);

  std::size_t prefix_length() const { return levels_.size() - 1; }
  const FgAbGroup& level(std::size_t i) const;
  /// f_i : S_{i+1} -> S_i.
  const GroupMap& map(std::size_t i) const;
  /// f_i o f_{i+1} o ... o f_{j-1} : S_j -> S_i (identity when i == j).
  GroupMap composite(std::size_t i, std::size_t j) const;

  const FgAbGroup& tail_group() const { return levels_.back(); }
  const GroupMap& tail_endo() const { return maps_.back(); }
  bool has_zero_tail() const { return tail_group().is_trivial(); }
  TailSpec tail() const;
  /// m when the tail endomorphism is multiplication by m.
  std::optional<Integer> tail_multiplier() const;

  /// The same sequence with the prefix materialized up to `width` levels.
  Tower expanded(std::size_t width) const;
  /// The same sequence with the shortest prefix that represents it.
  Tower compacted() const;

  bool all_levels_finite() const;
  /// Every structure map is zero.
  bool is_null() const;
  /// Every level is trivial.
  bool is_zero() const;
  /// Every structure map is onto.
  bool is_epimorphic() const;

  std::string summary() const;

  /// Equality of the represented sequences, independent of prefix length.
  friend bool operator==(const Tower& a, const Tower& b);

 private:
  Tower() = default;
  void validate() const;

  std::vector<FgAbGroup> levels_;
  std::vector<GroupMap> maps_;
};

/// A natural transformation between two towers. Both towers are stored
/// expanded to the width W = level_maps.size() - 1; map W is used at every
/// level >= W.
class TowerMorphism {
 public:
  /// Throws std::invalid_argument when shapes mismatch or a naturality square
  /// fails to commute.
  TowerMorphism(const Tower& source, const Tower& target, std::vector<GroupMap> level_maps);

  static TowerMorphism identity(const Tower& tower);

  const Tower& source() const { return source_; }
  const Tower& target() const { return target_; }
  std::size_t width() const { return maps_.size() - 1; }
  const GroupMap& level(std::size_t i) const;

  /// Every level map is onto.
  bool is_levelwise_surjective() const;
  /// Every level map is one-to-one.
  bool is_levelwise_injective() const;

 private:
  Tower source_;
  Tower target_;
  std::vector<GroupMap> maps_;
};

TowerMorphism compose(const TowerMorphism& outer, const TowerMorphism& inner);

/// Per-level subgroups H_i of S_i with f_i(H_{i+1}) inside H_i, constant
/// from the tail on: W + 1 subgroups for a tower of prefix length W.
class SubTower {
 public:
  SubTower(const Tower& tower, std::vector<Subgroup> levels);

  static SubTower whole(const Tower& tower);
  static SubTower zero(const Tower& tower);

  std::size_t width() const { return levels_.size() - 1; }
  const Subgroup& level(std::size_t i) const;
  const std::vector<Subgroup>& levels() const { return levels_; }
  bool is_zero() const;
  /// Contained levelwise in `other`.
  bool is_contained_in(const SubTower& other) const;

  friend bool operator==(const SubTower& a, const SubTower& b) { return a.levels_ == b.levels_; }

 private:
  std::vector<Subgroup> levels_;
};

/// I(H): the subtower with levels f_i(H_{i+1}).
SubTower image_step(const Tower& tower, const SubTower& sub);

struct EmbeddedTower {
  Tower tower;
  TowerMorphism inclusion;  // tower -> ambient
};

struct QuotientTower {
  Tower tower;
  TowerMorphism projection;  // ambient -> tower
};

/// The subtower as a tower in its own right, with its inclusion.
EmbeddedTower embed(const Tower& tower, const SubTower& sub);
/// The levelwise quotient S / H with its projection.
QuotientTower quotient(const Tower& tower, const SubTower& sub);

/// Levelwise kernel, as a subtower of the source.
SubTower kernel(const TowerMorphism& phi);
/// Levelwise image, as a subtower of the target.
SubTower image(const TowerMorphism& phi);

}  // namespace dlim
