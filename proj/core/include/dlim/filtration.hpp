#pragma once

// The transfinite image filtration I^beta(S) of a tower and everything read
// off from it: Mittag-Leffler status, length, lim / lim^1, locality,
// omega-completeness and the epimorphic-by-local decomposition.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dlim/ordinal.hpp"
#include "dlim/tower.hpp"

namespace dlim {

inline constexpr std::size_t kDefaultHorizon = 64;

enum class Truth { False, True, Unknown };

std::string to_string(Truth t);

struct Exact {};
struct PartialUpTo {
  Ordinal stage;
};

struct FiltrationStage {
  Ordinal stage;
  SubTower sub;
  /// PartialUpTo(n): the requested stage could not be reached; `sub` is I^n.
  std::variant<Exact, PartialUpTo> exactness;

  bool is_exact() const { return std::holds_alternative<Exact>(exactness); }
};

struct Stabilized {
  std::size_t stage;
};
struct NeverStabilizes {
  std::size_t free_rank_witness;
  std::string reason;
};
struct MlUnknown {
  std::size_t horizon;
};
using MlStatus = std::variant<Stabilized, NeverStabilizes, MlUnknown>;

struct UnknownBeyond {
  Ordinal bound;
};
using FiltrationLength = std::variant<Ordinal, UnknownBeyond>;

struct Lim1Zero {};
struct Lim1NonZero {
  std::string reason;
};
struct Lim1Unknown {
  std::size_t horizon;
};
using Lim1Status = std::variant<Lim1Zero, Lim1NonZero, Lim1Unknown>;

struct LimResult {
  /// nullopt when undecided within the horizon.
  std::optional<FgAbGroup> lim;
  /// lim S -> S_0, the projection of threads onto level 0.
  std::optional<GroupMap> to_level0;
  Lim1Status lim1;
};

struct CompletionStatus {
  Truth complete = Truth::Unknown;
  std::optional<std::size_t> cokernel_rank_witness;
};

struct AnalysisReport {
  MlStatus ml;
  FiltrationLength length;
  std::optional<FgAbGroup> lim;
  Lim1Status lim1;
  Truth local = Truth::Unknown;
  CompletionStatus omega_complete;
  std::size_t horizon = kDefaultHorizon;
};

struct Decomposition {
  EmbeddedTower epimorphic;  // E = I^len(S)
  QuotientTower local;       // L = S / E
  Lim1Status lim1;
};

std::string to_string(const MlStatus& s);
std::string to_string(const FiltrationLength& l);
std::string to_string(const Lim1Status& s);
std::string ml_kind(const MlStatus& s);
std::string lim1_kind(const Lim1Status& s);

/// Analysis of one tower; every result is computed once on construction.
class ImageFiltration {
 public:
  explicit ImageFiltration(Tower tower, std::size_t horizon = kDefaultHorizon);

  const Tower& tower() const { return tower_; }
  std::size_t horizon() const { return horizon_; }

  MlStatus ml_status() const;
  FiltrationLength length() const;
  FiltrationStage stage(const Ordinal& beta) const;
  /// I^len(S), when the length is known.
  std::optional<SubTower> stable_stage() const;
  LimResult lim() const;
  Truth is_local() const;
  CompletionStatus omega_completion() const;
  std::optional<Decomposition> decompose() const;
  AnalysisReport report() const;

 private:
  Tower tower_;
  std::size_t horizon_;
  // I^0 .. I^K; when stable_at_ is set, I^K = I^{K+1} with K = *stable_at_.
  std::vector<SubTower> finite_;
  std::optional<std::size_t> stable_at_;
  // Multiplication-by-m closed form: I^omega, I^{omega+1}, ... up to the
  // first repeat.
  std::optional<Integer> multiplier_;
  std::vector<SubTower> after_omega_;
  std::optional<NeverStabilizes> never_;
};

FiltrationStage iterate_image(const Tower& s, std::size_t n);
FiltrationStage transfinite_image(const Tower& s, const Ordinal& beta,
                                  std::size_t horizon = kDefaultHorizon);
FiltrationLength length(const Tower& s, std::size_t horizon = kDefaultHorizon);
MlStatus ml_check(const Tower& s, std::size_t horizon = kDefaultHorizon);
LimResult lim_lim1(const Tower& s, std::size_t horizon = kDefaultHorizon);
/// Throws std::domain_error when lim S is not decided within the horizon.
Decomposition decompose(const Tower& s, std::size_t horizon = kDefaultHorizon);
Truth is_local(const Tower& s, std::size_t horizon = kDefaultHorizon);
CompletionStatus omega_completion_status(const Tower& s, std::size_t horizon = kDefaultHorizon);
AnalysisReport analyze(const Tower& s, std::size_t horizon = kDefaultHorizon);

/// Rank certificate for a tail whose image chain e^n(T) never becomes
/// constant: returns the rank of the stable-rank part B when e induces a map
/// of determinant other than +-1 on B modulo torsion.
std::optional<std::size_t> tail_never_stabilizes(const GroupMap& endo);

}  // namespace dlim
