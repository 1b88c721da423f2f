#include "dlim/filtration.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace dlim {

std::string to_string(Truth t) {
  switch (t) {
    case Truth::False:
      return "false";
    case Truth::True:
      return "true";
    case Truth::Unknown:
      break;
  }
  return "unknown";
}

std::string ml_kind(const MlStatus& s) {
  if (std::holds_alternative<Stabilized>(s)) return "Stabilized";
  if (std::holds_alternative<NeverStabilizes>(s)) return "NeverStabilizes";
  return "Unknown";
}

std::string lim1_kind(const Lim1Status& s) {
  if (std::holds_alternative<Lim1Zero>(s)) return "Zero";
  if (std::holds_alternative<Lim1NonZero>(s)) return "NonZero";
  return "Unknown";
}

std::string to_string(const MlStatus& s) {
  if (const auto* st = std::get_if<Stabilized>(&s)) return "Stabilized(" + std::to_string(st->stage) + ")";
  if (const auto* nv = std::get_if<NeverStabilizes>(&s)) {
    return "NeverStabilizes(free rank " + std::to_string(nv->free_rank_witness) + ")";
  }
  return "Unknown(horizon " + std::to_string(std::get<MlUnknown>(s).horizon) + ")";
}

std::string to_string(const FiltrationLength& l) {
  if (const auto* o = std::get_if<Ordinal>(&l)) return o->to_string();
  return "UnknownBeyond(" + std::get<UnknownBeyond>(l).bound.to_string() + ")";
}

std::string to_string(const Lim1Status& s) {
  if (std::holds_alternative<Lim1Zero>(s)) return "Zero";
  if (const auto* nz = std::get_if<Lim1NonZero>(&s)) return "NonZero(" + nz->reason + ")";
  return "Unknown(horizon " + std::to_string(std::get<Lim1Unknown>(s).horizon) + ")";
}

std::optional<std::size_t> tail_never_stabilizes(const GroupMap& endo) {
  if (!endo.is_endomorphism()) throw std::invalid_argument("tail_never_stabilizes: not an endomorphism");
  const FgAbGroup& t = endo.domain();
  if (t.free_rank() == 0) return std::nullopt;
  Subgroup h = Subgroup::whole(t);
  std::size_t rank = t.free_rank();
  // The rank of e^n(T) drops at most free_rank times.
  while (true) {
    Subgroup next = image(endo, h);
    const std::size_t r = EmbeddedSubgroup(next).group().free_rank();
    if (r == rank) break;
    h = std::move(next);
    rank = r;
  }
  if (rank == 0) return std::nullopt;
  EmbeddedSubgroup b(h);
  const GroupMap on_b = restrict_map(endo, b, b);
  const std::size_t k = b.group().torsion_count();
  const Integer det = on_b.matrix().submatrix(k, k, rank, rank).determinant();
  if (abs(det) == 1) return std::nullopt;
  return rank;
}

namespace {

SubTower iterate_from(const Tower& s, SubTower sub, std::size_t steps) {
  for (std::size_t k = 0; k < steps; ++k) sub = image_step(s, sub);
  return sub;
}

}  // namespace

ImageFiltration::ImageFiltration(Tower tower, std::size_t horizon)
    : tower_(std::move(tower)), horizon_(horizon) {
  if (horizon_ == 0) throw std::invalid_argument("ImageFiltration: horizon must be >= 1");
  const std::size_t w = tower_.prefix_length();
  const FgAbGroup& t = tower_.tail_group();
  finite_.push_back(SubTower::whole(tower_));

  const auto m = tower_.tail_multiplier();
  if (t.free_rank() > 0 && m && abs(*m) >= 2) {
    multiplier_ = *m;
    never_ = NeverStabilizes{t.free_rank(), "tail is multiplication by " + m->get_str() +
                                                " on a group of free rank " +
                                                std::to_string(t.free_rank())};
    // I^omega_i is the intersection of m^k g_i(T), i.e. the part of g_i(T)
    // of finite order prime to m.
    std::vector<Subgroup> levels;
    for (std::size_t i = 0; i <= w; ++i) {
      levels.push_back(coprime_torsion(image(tower_.composite(i, w)), *m));
    }
    after_omega_.emplace_back(tower_, std::move(levels));
    while (true) {
      SubTower next = image_step(tower_, after_omega_.back());
      if (next == after_omega_.back()) break;
      after_omega_.push_back(std::move(next));
    }
    return;
  }

  if (t.free_rank() > 0) {
    if (auto r = tail_never_stabilizes(tower_.tail_endo())) {
      never_ = NeverStabilizes{*r, "tail endomorphism has determinant other than +-1 on a rank " +
                                       std::to_string(*r) + " part of its stable image"};
    }
  }
  for (std::size_t n = 0; n < horizon_; ++n) {
    SubTower next = image_step(tower_, finite_.back());
    if (next == finite_.back()) {
      stable_at_ = n;
      break;
    }
    finite_.push_back(std::move(next));
  }
  if (stable_at_ && never_) {
    throw std::logic_error("ImageFiltration: stabilized despite a non-stabilization certificate");
  }
}

MlStatus ImageFiltration::ml_status() const {
  if (stable_at_) return Stabilized{*stable_at_};
  if (never_) return *never_;
  return MlUnknown{horizon_};
}

FiltrationLength ImageFiltration::length() const {
  if (stable_at_) return Ordinal::finite(*stable_at_);
  if (multiplier_) return Ordinal::omega() + Ordinal::finite(after_omega_.size() - 1);
  if (never_) return UnknownBeyond{Ordinal::omega()};
  return UnknownBeyond{Ordinal::finite(horizon_)};
}

FiltrationStage ImageFiltration::stage(const Ordinal& beta) const {
  if (auto n = beta.as_finite()) {
    if (stable_at_ && *n >= *stable_at_) return {beta, finite_[*stable_at_], Exact{}};
    if (*n < finite_.size()) return {beta, finite_[*n], Exact{}};
    return {beta, iterate_from(tower_, finite_.back(), *n - (finite_.size() - 1)), Exact{}};
  }
  if (stable_at_) return {beta, finite_[*stable_at_], Exact{}};
  if (multiplier_) {
    std::size_t k = after_omega_.size() - 1;
    if (beta < Ordinal::omega_power(Ordinal::finite(1), 2)) {
      k = static_cast<std::size_t>(std::min<std::uint64_t>(beta.finite_part(), k));
    }
    return {beta, after_omega_[k], Exact{}};
  }
  const Ordinal reached = Ordinal::finite(finite_.size() - 1);
  return {beta, finite_.back(), PartialUpTo{reached}};
}

std::optional<SubTower> ImageFiltration::stable_stage() const {
  if (stable_at_) return finite_[*stable_at_];
  if (multiplier_) return after_omega_.back();
  return std::nullopt;
}

LimResult ImageFiltration::lim() const {
  LimResult out;
  if (stable_at_) {
    out.lim1 = Lim1Zero{};
  } else if (never_) {
    out.lim1 = Lim1NonZero{never_->reason};
  } else {
    out.lim1 = Lim1Unknown{horizon_};
  }
  const auto stable = stable_stage();
  if (!stable) return out;

  const std::size_t w = tower_.prefix_length();
  const Subgroup& b = stable->level(w);
  const GroupMap& e = tower_.tail_endo();
  if (!(image(e, b) == b)) {
    throw std::logic_error("lim: tail endomorphism is not onto the stable image");
  }
  EmbeddedSubgroup eb(b);
  if (!kernel(restrict_map(e, eb, eb)).is_trivial()) {
    throw std::logic_error("lim: tail endomorphism is not injective on the stable image");
  }
  out.lim = eb.group();
  out.to_level0 = compose(tower_.composite(0, w), eb.inclusion());
  return out;
}

Truth ImageFiltration::is_local() const {
  if (stable_at_) return finite_[*stable_at_].is_zero() ? Truth::True : Truth::False;
  if (never_) return Truth::False;
  return Truth::Unknown;
}

CompletionStatus ImageFiltration::omega_completion() const {
  if (stable_at_) return {Truth::True, std::nullopt};
  if (multiplier_) return {Truth::False, tower_.tail_group().free_rank()};
  return {Truth::Unknown, std::nullopt};
}

std::optional<Decomposition> ImageFiltration::decompose() const {
  const auto stable = stable_stage();
  if (!stable) return std::nullopt;
  return Decomposition{embed(tower_, *stable), quotient(tower_, *stable), lim().lim1};
}

AnalysisReport ImageFiltration::report() const {
  AnalysisReport r;
  r.ml = ml_status();
  r.length = length();
  const LimResult l = lim();
  r.lim = l.lim;
  r.lim1 = l.lim1;
  r.local = is_local();
  r.omega_complete = omega_completion();
  r.horizon = horizon_;
  return r;
}

FiltrationStage iterate_image(const Tower& s, std::size_t n) {
  return {Ordinal::finite(n), iterate_from(s, SubTower::whole(s), n), Exact{}};
}

FiltrationStage transfinite_image(const Tower& s, const Ordinal& beta, std::size_t horizon) {
  if (auto n = beta.as_finite()) return iterate_image(s, *n);
  return ImageFiltration(s, horizon).stage(beta);
}

FiltrationLength length(const Tower& s, std::size_t horizon) {
  return ImageFiltration(s, horizon).length();
}

MlStatus ml_check(const Tower& s, std::size_t horizon) {
  return ImageFiltration(s, horizon).ml_status();
}

LimResult lim_lim1(const Tower& s, std::size_t horizon) { return ImageFiltration(s, horizon).lim(); }

Decomposition decompose(const Tower& s, std::size_t horizon) {
  auto d = ImageFiltration(s, horizon).decompose();
  if (!d) throw std::domain_error("decompose: lim is not decided within the horizon");
  return std::move(*d);
}

Truth is_local(const Tower& s, std::size_t horizon) { return ImageFiltration(s, horizon).is_local(); }

CompletionStatus omega_completion_status(const Tower& s, std::size_t horizon) {
  return ImageFiltration(s, horizon).omega_completion();
}

AnalysisReport analyze(const Tower& s, std::size_t horizon) {
  return ImageFiltration(s, horizon).report();
}

}  // namespace dlim
