#include "dlim/tower.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace dlim {

// ---- Tower -----------------------------------------------------------------

Tower::Tower(std::vector<FgAbGroup> prefix, std::vector<GroupMap> prefix_maps, TailSpec tail,
             std::optional<GroupMap> tail_connection) {
  const std::size_t w = prefix.size();
  if (prefix_maps.size() != (w == 0 ? 0 : w - 1)) {
    throw std::invalid_argument("Tower: a prefix of " + std::to_string(w) + " levels needs " +
                                std::to_string(w == 0 ? 0 : w - 1) + " maps, got " +
                                std::to_string(prefix_maps.size()));
  }
  FgAbGroup t;
  GroupMap e = GroupMap::zero(t, t);
  if (const auto* c = std::get_if<ConstantEndoTail>(&tail)) {
    t = c->group;
    e = c->endo;
    if (!(e.domain() == t) || !(e.codomain() == t)) {
      throw std::invalid_argument("Tower: tail endomorphism does not act on the tail group");
    }
  }
  levels_ = std::move(prefix);
  maps_ = std::move(prefix_maps);
  if (w > 0) {
    if (tail_connection) {
      maps_.push_back(*tail_connection);
    } else if (t.is_trivial()) {
      maps_.push_back(GroupMap::zero(t, levels_.back()));
    } else {
      throw std::invalid_argument("Tower: a nonzero tail after a prefix needs a connecting map");
    }
  } else if (tail_connection) {
    throw std::invalid_argument("Tower: connecting map given without a prefix");
  }
  levels_.push_back(std::move(t));
  maps_.push_back(std::move(e));
  validate();
}

Tower Tower::from_levels(std::vector<FgAbGroup> levels, std::vector<GroupMap> maps) {
  Tower t;
  t.levels_ = std::move(levels);
  t.maps_ = std::move(maps);
  t.validate();
  return t;
}

void Tower::validate() const {
  if (levels_.empty() || levels_.size() != maps_.size()) {
    throw std::invalid_argument("Tower: need W + 1 levels and W + 1 maps");
  }
  const std::size_t w = levels_.size() - 1;
  for (std::size_t i = 0; i <= w; ++i) {
    const FgAbGroup& src = levels_[std::min(i + 1, w)];
    if (!(maps_[i].domain() == src) || !(maps_[i].codomain() == levels_[i])) {
      throw std::invalid_argument("Tower: map " + std::to_string(i) + " goes " +
                                  maps_[i].domain().to_string() + " -> " +
                                  maps_[i].codomain().to_string() + ", expected " +
                                  src.to_string() + " -> " + levels_[i].to_string());
    }
  }
}

Tower Tower::zero() { return Tower({}, {}, ZeroTail{}); }

Tower Tower::constant(const GroupMap& endo) {
  if (!endo.is_endomorphism()) throw std::invalid_argument("Tower::constant: not an endomorphism");
  return Tower({}, {}, ConstantEndoTail{endo.domain(), endo});
}

Tower Tower::s_of_a(const FgAbGroup& group, const Integer& m) {
  return constant(GroupMap::multiplication(group, m));
}

const FgAbGroup& Tower::level(std::size_t i) const {
  return levels_[std::min(i, prefix_length())];
}

const GroupMap& Tower::map(std::size_t i) const { return maps_[std::min(i, prefix_length())]; }

GroupMap Tower::composite(std::size_t i, std::size_t j) const {
  if (i > j) throw std::invalid_argument("Tower::composite: need i <= j");
  const std::size_t w = prefix_length();
  GroupMap result = GroupMap::identity(level(j));
  std::size_t k = j;
  if (k > w) {
    const std::size_t stop = std::max(i, w);
    result = power(tail_endo(), k - stop);
    k = stop;
  }
  while (k > i) {
    --k;
    result = compose(maps_[k], result);
  }
  return result;
}

TailSpec Tower::tail() const {
  if (has_zero_tail()) return ZeroTail{};
  return ConstantEndoTail{tail_group(), tail_endo()};
}

std::optional<Integer> Tower::tail_multiplier() const { return tail_endo().as_multiplication(); }

Tower Tower::expanded(std::size_t width) const {
  Tower t = *this;
  while (t.prefix_length() < width) {
    t.levels_.push_back(tail_group());
    t.maps_.push_back(tail_endo());
  }
  return t;
}

Tower Tower::compacted() const {
  Tower t = *this;
  while (t.prefix_length() > 0) {
    const std::size_t w = t.prefix_length();
    if (!(t.levels_[w - 1] == t.levels_[w]) || !(t.maps_[w - 1] == t.maps_[w])) break;
    t.levels_.pop_back();
    t.maps_.pop_back();
  }
  return t;
}

bool Tower::all_levels_finite() const {
  return std::all_of(levels_.begin(), levels_.end(), [](const FgAbGroup& g) { return g.is_finite(); });
}

bool Tower::is_null() const {
  return std::all_of(maps_.begin(), maps_.end(), [](const GroupMap& f) { return f.is_zero(); });
}

bool Tower::is_zero() const {
  return std::all_of(levels_.begin(), levels_.end(), [](const FgAbGroup& g) { return g.is_trivial(); });
}

bool Tower::is_epimorphic() const {
  return std::all_of(maps_.begin(), maps_.end(), [](const GroupMap& f) { return image(f).is_whole(); });
}

std::string Tower::summary() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < prefix_length(); ++i) out << levels_[i].to_string() << " <- ";
  out << "(" << tail_group().to_string();
  if (!has_zero_tail()) {
    if (auto m = tail_multiplier()) {
      out << ", *" << m->get_str();
    } else {
      out << ", endo";
    }
  }
  out << ")^inf";
  return out.str();
}

bool operator==(const Tower& a, const Tower& b) {
  const std::size_t w = std::max(a.prefix_length(), b.prefix_length());
  const Tower ea = a.expanded(w);
  const Tower eb = b.expanded(w);
  return ea.levels_ == eb.levels_ && ea.maps_ == eb.maps_;
}

// ---- TowerMorphism ---------------------------------------------------------

TowerMorphism::TowerMorphism(const Tower& source, const Tower& target,
                             std::vector<GroupMap> level_maps)
    : source_(source), target_(target), maps_(std::move(level_maps)) {
  if (maps_.empty()) throw std::invalid_argument("TowerMorphism: no level maps");
  const std::size_t w = maps_.size() - 1;
  if (source.prefix_length() > w || target.prefix_length() > w) {
    throw std::invalid_argument("TowerMorphism: " + std::to_string(maps_.size()) +
                                " level maps do not reach the tails");
  }
  source_ = source.expanded(w);
  target_ = target.expanded(w);
  for (std::size_t i = 0; i <= w; ++i) {
    if (!(maps_[i].domain() == source_.level(i)) || !(maps_[i].codomain() == target_.level(i))) {
      throw std::invalid_argument("TowerMorphism: level map " + std::to_string(i) +
                                  " has the wrong domain or codomain");
    }
    const GroupMap& next = maps_[std::min(i + 1, w)];
    if (!(compose(target_.map(i), next) == compose(maps_[i], source_.map(i)))) {
      throw std::invalid_argument("TowerMorphism: square at level " + std::to_string(i) +
                                  " does not commute");
    }
  }
}

TowerMorphism TowerMorphism::identity(const Tower& tower) {
  std::vector<GroupMap> maps;
  for (std::size_t i = 0; i <= tower.prefix_length(); ++i) maps.push_back(GroupMap::identity(tower.level(i)));
  return TowerMorphism(tower, tower, std::move(maps));
}

const GroupMap& TowerMorphism::level(std::size_t i) const { return maps_[std::min(i, width())]; }

bool TowerMorphism::is_levelwise_surjective() const {
  return std::all_of(maps_.begin(), maps_.end(), [](const GroupMap& f) { return image(f).is_whole(); });
}

bool TowerMorphism::is_levelwise_injective() const {
  return std::all_of(maps_.begin(), maps_.end(), [](const GroupMap& f) { return kernel(f).is_trivial(); });
}

TowerMorphism compose(const TowerMorphism& outer, const TowerMorphism& inner) {
  if (!(inner.target() == outer.source())) {
    throw std::invalid_argument("compose: tower morphisms do not chain");
  }
  const std::size_t w = std::max(outer.width(), inner.width());
  std::vector<GroupMap> maps;
  for (std::size_t i = 0; i <= w; ++i) maps.push_back(compose(outer.level(i), inner.level(i)));
  return TowerMorphism(inner.source(), outer.target(), std::move(maps));
}

// ---- SubTower --------------------------------------------------------------

SubTower::SubTower(const Tower& tower, std::vector<Subgroup> levels) : levels_(std::move(levels)) {
  const std::size_t w = tower.prefix_length();
  if (levels_.size() != w + 1) {
    throw std::invalid_argument("SubTower: expected " + std::to_string(w + 1) + " levels, got " +
                                std::to_string(levels_.size()));
  }
  for (std::size_t i = 0; i <= w; ++i) {
    if (!(levels_[i].ambient() == tower.level(i))) {
      throw std::invalid_argument("SubTower: level " + std::to_string(i) + " lives in the wrong group");
    }
  }
  for (std::size_t i = 0; i <= w; ++i) {
    if (!image(tower.map(i), level(i + 1)).is_subgroup_of(levels_[i])) {
      throw std::invalid_argument("SubTower: level " + std::to_string(i + 1) +
                                  " is not carried into level " + std::to_string(i));
    }
  }
}

SubTower SubTower::whole(const Tower& tower) {
  std::vector<Subgroup> levels;
  for (std::size_t i = 0; i <= tower.prefix_length(); ++i) levels.push_back(Subgroup::whole(tower.level(i)));
  return SubTower(tower, std::move(levels));
}

SubTower SubTower::zero(const Tower& tower) {
  std::vector<Subgroup> levels;
  for (std::size_t i = 0; i <= tower.prefix_length(); ++i) levels.push_back(Subgroup::trivial(tower.level(i)));
  return SubTower(tower, std::move(levels));
}

const Subgroup& SubTower::level(std::size_t i) const { return levels_[std::min(i, width())]; }

bool SubTower::is_zero() const {
  return std::all_of(levels_.begin(), levels_.end(), [](const Subgroup& h) { return h.is_trivial(); });
}

bool SubTower::is_contained_in(const SubTower& other) const {
  const std::size_t w = std::max(width(), other.width());
  for (std::size_t i = 0; i <= w; ++i) {
    if (!level(i).is_subgroup_of(other.level(i))) return false;
  }
  return true;
}

namespace {

// The tower materialized to the width the subtower was built against.
Tower aligned(const Tower& tower, const SubTower& sub) {
  if (sub.width() < tower.prefix_length()) {
    throw std::invalid_argument("SubTower: width " + std::to_string(sub.width()) +
                                " is shorter than the prefix");
  }
  return tower.expanded(sub.width());
}

}  // namespace

SubTower image_step(const Tower& ambient, const SubTower& sub) {
  const Tower tower = aligned(ambient, sub);
  std::vector<Subgroup> levels;
  for (std::size_t i = 0; i <= tower.prefix_length(); ++i) {
    levels.push_back(image(tower.map(i), sub.level(i + 1)));
  }
  return SubTower(tower, std::move(levels));
}

EmbeddedTower embed(const Tower& ambient, const SubTower& sub) {
  const Tower tower = aligned(ambient, sub);
  const std::size_t w = tower.prefix_length();
  std::vector<EmbeddedSubgroup> parts;
  for (std::size_t i = 0; i <= w; ++i) parts.emplace_back(sub.level(i));
  std::vector<FgAbGroup> groups;
  std::vector<GroupMap> maps;
  std::vector<GroupMap> inclusions;
  for (std::size_t i = 0; i <= w; ++i) {
    groups.push_back(parts[i].group());
    maps.push_back(restrict_map(tower.map(i), parts[std::min(i + 1, w)], parts[i]));
    inclusions.push_back(parts[i].inclusion());
  }
  Tower t = Tower::from_levels(std::move(groups), std::move(maps));
  TowerMorphism inc(t, tower, std::move(inclusions));
  return {std::move(t), std::move(inc)};
}

QuotientTower quotient(const Tower& ambient, const SubTower& sub) {
  const Tower tower = aligned(ambient, sub);
  const std::size_t w = tower.prefix_length();
  std::vector<Quotient> parts;
  for (std::size_t i = 0; i <= w; ++i) parts.push_back(quotient(sub.level(i)));
  std::vector<FgAbGroup> groups;
  std::vector<GroupMap> maps;
  std::vector<GroupMap> projections;
  for (std::size_t i = 0; i <= w; ++i) {
    groups.push_back(parts[i].group);
    maps.push_back(induced_map(tower.map(i), parts[std::min(i + 1, w)], parts[i]));
    projections.push_back(parts[i].projection);
  }
  Tower t = Tower::from_levels(std::move(groups), std::move(maps));
  TowerMorphism proj(tower, t, std::move(projections));
  return {std::move(t), std::move(proj)};
}

SubTower kernel(const TowerMorphism& phi) {
  std::vector<Subgroup> levels;
  for (std::size_t i = 0; i <= phi.width(); ++i) levels.push_back(kernel(phi.level(i)));
  return SubTower(phi.source(), std::move(levels));
}

SubTower image(const TowerMorphism& phi) {
  std::vector<Subgroup> levels;
  for (std::size_t i = 0; i <= phi.width(); ++i) levels.push_back(image(phi.level(i)));
  return SubTower(phi.target(), std::move(levels));
}

}  // namespace dlim
