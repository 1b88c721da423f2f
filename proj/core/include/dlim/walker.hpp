#pragma once

// The groups D'_alpha: the free Z-module on finite increasing sequences of
// ordinals below alpha, modulo the carrying relations
//   p e_(a1)              = 0
//   p e_(a1, a2, ..., an) = e_(a2, ..., an).
// Every class has a unique representative with digits in {1, ..., p-1}.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlim/integer_matrix.hpp"
#include "dlim/ordinal.hpp"

namespace dlim {

class WalkerContext {
 public:
  /// Throws std::invalid_argument unless p is prime and alpha > 0.
  WalkerContext(std::uint64_t p, Ordinal alpha);

  std::uint64_t p() const { return p_; }
  const Ordinal& alpha() const { return alpha_; }

  friend bool operator==(const WalkerContext&, const WalkerContext&) = default;

 private:
  std::uint64_t p_;
  Ordinal alpha_;
};

class WalkerElement {
 public:
  using Support = std::map<DegLexIndex, Integer>;

  /// A raw element; zero coefficients are dropped. Throws std::out_of_range
  /// when an index has an entry >= alpha.
  WalkerElement(WalkerContext context, Support raw);

  static WalkerElement zero(const WalkerContext& context);
  static WalkerElement basis(const WalkerContext& context, const DegLexIndex& index,
                             const Integer& coefficient = 1);
  /// "3*e[0,1] + e[w] - 2*e[w+1, w*2]" or "0". Throws ParseError.
  static WalkerElement parse(const WalkerContext& context, std::string_view text);

  const WalkerContext& context() const { return context_; }
  const Support& support() const { return support_; }
  bool is_normalized() const { return normalized_; }
  bool is_zero() const { return support_.empty(); }
  /// Largest index of the support in deg-lex order.
  std::optional<DegLexIndex> leading_index() const;
  Integer coefficient(const DegLexIndex& index) const;

  /// Terms in descending deg-lex order.
  std::string to_string() const;

  /// Equality of representations, not of classes.
  friend bool operator==(const WalkerElement& a, const WalkerElement& b) {
    return a.context_ == b.context_ && a.support_ == b.support_;
  }

 private:
  friend WalkerElement normalize(const WalkerElement& x);

  WalkerContext context_;
  Support support_;
  bool normalized_ = false;
};

/// r_sigma.
WalkerElement relation(const WalkerContext& context, const DegLexIndex& sigma);

WalkerElement normalize(const WalkerElement& x);
/// Throws std::invalid_argument on a context mismatch.
WalkerElement add(const WalkerElement& x, const WalkerElement& y);
WalkerElement scalar_mul(const Integer& c, const WalkerElement& x);
WalkerElement mul_by_p(const WalkerElement& x);
bool in_relations(const WalkerElement& x);

/// Least first coordinate over the normal form's support; alpha for zero.
Ordinal height(const WalkerElement& x);
/// height(x) >= beta; throws std::invalid_argument when beta > alpha.
bool in_p_beta(const WalkerElement& x, const Ordinal& beta);

struct UlmSample {
  Ordinal beta;
  Ordinal height;       // height of e_(beta)
  bool nonzero = false; // e_(beta) is not a relation
  bool exact() const { return nonzero && height == beta; }
};

struct UlmProbeReport {
  std::vector<UlmSample> samples;
  /// Every nonzero element met while multiplying the probes by p had height
  /// below alpha, and every chain ended in zero.
  bool alpha_stage_trivial = true;
  /// Heights rose strictly along every multiplication-by-p chain.
  bool heights_increase = true;

  bool passed() const;
};

/// Throws std::invalid_argument for a sample >= alpha.
UlmProbeReport ulm_probe(const WalkerContext& context, const std::vector<Ordinal>& samples);

struct HeightStep {
  Ordinal before;
  std::optional<Ordinal> after;  // nullopt when p x = 0
};

/// Throws std::invalid_argument for x = 0.
HeightStep mul_p_height_step(const WalkerElement& x);

}  // namespace dlim
