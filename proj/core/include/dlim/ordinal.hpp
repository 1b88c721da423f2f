#pragma once

// Ordinals below epsilon_0 in Cantor normal form, and finite strictly
// increasing ordinal sequences under the deg-lex well-order.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace dlim {

/// w^e_1 * c_1 + ... + w^e_k * c_k with e_1 > ... > e_k and c_i >= 1.
/// The empty sum is 0. Exponents are Ordinals themselves, so every value
/// is below epsilon_0.
class Ordinal {
 public:
  struct Term {
    std::shared_ptr<const Ordinal> exponent;
    std::uint64_t coefficient;
  };

  Ordinal() = default;

  static Ordinal finite(std::uint64_t n);
  static Ordinal omega();
  /// w^exponent * coefficient.
  static Ordinal omega_power(const Ordinal& exponent, std::uint64_t coefficient = 1);

  /// Textual syntax: "w^2*3 + w*2 + 4", "w^(w+1)", "5". The letter may also
  /// be written as U+03C9. Addition is ordinal addition, so "1 + w" is w.
  static Ordinal parse(std::string_view text);

  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  /// Nonzero and without a finite last term.
  bool is_limit() const;
  bool is_successor() const { return !is_zero() && !is_limit(); }
  std::optional<std::uint64_t> as_finite() const;
  /// Coefficient of w^0.
  std::uint64_t finite_part() const;

  Ordinal succ() const;
  std::string to_string() const;

  friend Ordinal operator+(const Ordinal& a, const Ordinal& b);
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b) { return (a <=> b) == 0; }

 private:
  std::vector<Term> terms_;
};

inline std::strong_ordering ord_compare(const Ordinal& a, const Ordinal& b) { return a <=> b; }

/// Uniform-ish random ordinal strictly below `bound` (which must be > 0).
/// Coefficients of freshly introduced terms stay small.
Ordinal random_ordinal_below(const Ordinal& bound, std::mt19937_64& rng);

/// A nonempty strictly increasing sequence (a_1 < ... < a_n).
class DegLexIndex {
 public:
  explicit DegLexIndex(std::vector<Ordinal> entries);
  DegLexIndex(std::initializer_list<std::uint64_t> finite_entries);

  /// "[0, w, w+1]"; the brackets are optional.
  static DegLexIndex parse(std::string_view text);
  /// (0, 1, ..., n-1), the least index of length n.
  static DegLexIndex minimal(std::size_t length);

  std::size_t size() const { return entries_.size(); }
  const std::vector<Ordinal>& entries() const { return entries_; }
  const Ordinal& operator[](std::size_t i) const { return entries_[i]; }
  const Ordinal& first() const { return entries_.front(); }
  const Ordinal& last() const { return entries_.back(); }
  /// (a_2, ..., a_n); requires size() >= 2.
  DegLexIndex without_first() const;
  bool bounded_by(const Ordinal& alpha) const { return last() < alpha; }

  std::string to_string() const;

  /// Shorter sequences first, then lexicographic.
  friend std::strong_ordering operator<=>(const DegLexIndex& a, const DegLexIndex& b);
  friend bool operator==(const DegLexIndex& a, const DegLexIndex& b) { return (a <=> b) == 0; }

 private:
  std::vector<Ordinal> entries_;
};

inline std::strong_ordering deglex_compare(const DegLexIndex& a, const DegLexIndex& b) {
  return a <=> b;
}

/// Returns a strictly smaller index, or nullopt once nothing smaller is offered.
using DescentChooser = std::function<std::optional<DegLexIndex>(const DegLexIndex&)>;

/// Follows `chooser` from `start` until it reports exhaustion and returns the
/// number of steps taken. Throws CapExceeded after `step_cap` steps and
/// std::logic_error if the chooser ever fails to descend.
std::size_t deglex_descent_probe(const DegLexIndex& start, const DescentChooser& chooser,
                                 std::size_t step_cap);

/// Pseudorandom descending steps: lowers one entry where the sequence leaves
/// room, or drops to a random shorter index with entries below `bound`.
DescentChooser random_descent_chooser(std::uint64_t seed, Ordinal bound);

}  // namespace dlim
