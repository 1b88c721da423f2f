#include "dlim/constructions.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>

#include "dlim/error.hpp"

namespace dlim {

ShiftResult shift(const Tower& s) {
  const std::size_t w = s.prefix_length();
  std::vector<GroupMap> tilde;
  for (std::size_t i = 0; i <= w; ++i) tilde.push_back(s.map(i));
  if (w == 0) return {s, TowerMorphism(s, s, std::move(tilde))};

  std::vector<FgAbGroup> levels;
  std::vector<GroupMap> maps;
  for (std::size_t i = 1; i <= w; ++i) {
    levels.push_back(s.level(i));
    maps.push_back(s.map(i));
  }
  Tower shifted = Tower::from_levels(std::move(levels), std::move(maps));
  TowerMorphism f(shifted, s, std::move(tilde));
  return {std::move(shifted), std::move(f)};
}

ImageTowerResult image_tower(const Tower& s) {
  const SubTower i1 = image_step(s, SubTower::whole(s));
  EmbeddedTower e = embed(s, i1);
  QuotientTower q = quotient(s, i1);
  return {std::move(e.tower), std::move(e.inclusion), std::move(q.tower), std::move(q.projection)};
}

namespace {

// sum over k of inj_k o maps[k] o proj_k
GroupMap block_diagonal(const DirectSum& target, const DirectSum& source,
                        const std::vector<GroupMap>& maps) {
  GroupMap total = GroupMap::zero(source.group, target.group);
  for (std::size_t k = 0; k < maps.size(); ++k) {
    total = total + compose(target.injections[k], compose(maps[k], source.projections[k]));
  }
  return total;
}

}  // namespace

Tower null_extension(const Tower& s, const Tower& n, std::span<const GroupMap> psi) {
  if (psi.empty()) throw std::invalid_argument("null_extension: psi is empty");
  if (!n.is_null()) throw std::invalid_argument("null_extension: N is not a null tower");
  const std::size_t w = psi.size() - 1;
  if (s.prefix_length() > w || n.prefix_length() > w) {
    throw std::invalid_argument("null_extension: psi does not reach the tails");
  }
  std::vector<DirectSum> sums;
  for (std::size_t i = 0; i <= w; ++i) {
    const FgAbGroup parts[] = {n.level(i), s.level(i)};
    sums.push_back(direct_sum(parts));
  }
  std::vector<FgAbGroup> levels;
  std::vector<GroupMap> maps;
  for (std::size_t i = 0; i <= w; ++i) {
    const GroupMap& p = psi[i];
    if (!(p.domain() == s.level(i + 1)) || !(p.codomain() == n.level(i))) {
      throw std::invalid_argument("null_extension: psi[" + std::to_string(i) + "] has shape " +
                                  p.domain().to_string() + " -> " + p.codomain().to_string());
    }
    const DirectSum& src = sums[std::min(i + 1, w)];
    const DirectSum& dst = sums[i];
    GroupMap m = block_diagonal(dst, src, {n.map(i), s.map(i)});
    m = m + compose(dst.injections[0], compose(p, src.projections[1]));
    levels.push_back(dst.group);
    maps.push_back(std::move(m));
  }
  return Tower::from_levels(std::move(levels), std::move(maps));
}

Tower limit_of_towers(std::span<const Tower> family) {
  if (family.empty()) return Tower::zero();
  std::size_t w = 0;
  for (const Tower& t : family) w = std::max(w, t.prefix_length());
  std::vector<DirectSum> sums;
  for (std::size_t i = 0; i <= w; ++i) {
    std::vector<FgAbGroup> parts;
    for (const Tower& t : family) parts.push_back(t.level(i));
    sums.push_back(direct_sum(parts));
  }
  std::vector<FgAbGroup> levels;
  std::vector<GroupMap> maps;
  for (std::size_t i = 0; i <= w; ++i) {
    std::vector<GroupMap> blocks;
    for (const Tower& t : family) blocks.push_back(t.map(i));
    levels.push_back(sums[i].group);
    maps.push_back(block_diagonal(sums[i], sums[std::min(i + 1, w)], blocks));
  }
  return Tower::from_levels(std::move(levels), std::move(maps));
}

Tower a_n_tower(const FgAbGroup& a, std::size_t n) {
  std::vector<FgAbGroup> prefix(n + 1, a);
  std::vector<GroupMap> maps(n, GroupMap::identity(a));
  return Tower(std::move(prefix), std::move(maps), ZeroTail{});
}

AdjunctionReport adjunction_check(const FgAbGroup& a, std::size_t n, const Tower& s,
                                  std::size_t cap) {
  const Tower an = a_n_tower(a, n);
  const std::size_t w = std::max(an.prefix_length(), s.prefix_length());

  std::vector<std::vector<GroupMap>> homs;
  for (std::size_t i = 0; i <= n; ++i) homs.push_back(enumerate_homomorphisms(a, s.level(i), cap));

  AdjunctionReport report;
  report.group_maps = homs[n].size();
  report.squares_commute = true;
  std::vector<GroupMap> chosen(n + 1);
  std::vector<GroupMap> tops;

  // Levels are chosen from n downwards; a candidate at level i survives when
  // the square with the level above commutes.
  std::function<void(std::size_t)> descend = [&](std::size_t i) {
    for (const GroupMap& phi : homs[i]) {
      if (i < n && !(compose(s.map(i), chosen[i + 1]) == compose(phi, an.map(i)))) continue;
      chosen[i] = phi;
      if (i > 0) {
        descend(i - 1);
        continue;
      }
      std::vector<GroupMap> level_maps(chosen);
      for (std::size_t j = n + 1; j <= w; ++j) level_maps.push_back(GroupMap::zero(an.level(j), s.level(j)));
      TowerMorphism morphism(an, s, std::move(level_maps));
      for (std::size_t j = 0; j < n; ++j) {
        if (!(morphism.level(j) == compose(s.map(j), morphism.level(j + 1)))) report.squares_commute = false;
      }
      tops.push_back(morphism.level(n));
      ++report.tower_morphisms;
    }
  };
  descend(n);

  report.injective = true;
  for (std::size_t x = 0; x < tops.size() && report.injective; ++x) {
    for (std::size_t y = x + 1; y < tops.size(); ++y) {
      if (tops[x] == tops[y]) {
        report.injective = false;
        break;
      }
    }
  }
  return report;
}

WindowOperator one_minus_f_window(const Tower& s, std::size_t width) {
  if (width == 0) throw std::invalid_argument("one_minus_f_window: width must be >= 1");
  std::vector<FgAbGroup> parts;
  for (std::size_t i = 0; i < width; ++i) {
    if (!s.level(i).is_finite()) {
      throw std::domain_error("one_minus_f_window: level " + std::to_string(i) + " is infinite");
    }
    parts.push_back(s.level(i));
  }
  DirectSum p = direct_sum(parts);
  GroupMap f = GroupMap::zero(p.group, p.group);
  for (std::size_t j = 0; j + 1 < width; ++j) {
    f = f + compose(p.injections[j], compose(s.map(j), p.projections[j + 1]));
  }
  const GroupMap id = GroupMap::identity(p.group);
  GroupMap inverse = GroupMap::zero(p.group, p.group);
  for (std::size_t k = 0; k < width; ++k) inverse = inverse + power(f, k);
  GroupMap one_minus_f = id - f;
  return {std::move(p), std::move(f), std::move(one_minus_f), std::move(inverse)};
}

}  // namespace dlim
