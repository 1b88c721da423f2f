#pragma once

// Finitely generated abelian groups in invariant-factor form, homomorphisms
// between them, and subgroups.
//
// Generator convention: a group Z^r + Z/d_1 + ... + Z/d_k has k + r canonical
// generators, the torsion ones first (in the order d_1 | ... | d_k), then the
// free ones. Elements are coordinate vectors in that basis with torsion
// coordinates reduced into [0, d_i).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dlim/integer_matrix.hpp"

namespace dlim {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

class FgAbGroup {
 public:
  /// The trivial group.
  FgAbGroup() = default;
  /// Validates canonical form: every factor >= 2 and d_i | d_{i+1}.
  FgAbGroup(std::size_t free_rank, std::vector<Integer> invariant_factors);

  static FgAbGroup free(std::size_t rank);
  /// Z/n; n == 0 gives Z and n == 1 the trivial group.
  static FgAbGroup cyclic(const Integer& n);

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& invariant_factors() const { return factors_; }
  std::size_t torsion_count() const { return factors_.size(); }
  std::size_t num_generators() const { return factors_.size() + free_rank_; }

  /// Order of canonical generator j, 0 for a free generator.
  Integer generator_order(std::size_t j) const;

  bool is_trivial() const { return num_generators() == 0; }
  bool is_finite() const { return free_rank_ == 0; }
  /// Number of elements; nullopt when infinite.
  std::optional<Integer> order() const;
  /// Exponent of the torsion subgroup (1 if torsion-free).
  Integer torsion_exponent() const;

  Vector zero() const { return Vector(num_generators()); }
  Vector generator(std::size_t j) const;
  Vector reduce(Vector x) const;
  bool is_reduced(std::span<const Integer> x) const;
  bool is_zero(std::span<const Integer> x) const;
  Vector add(std::span<const Integer> a, std::span<const Integer> b) const;
  Vector scale(const Integer& c, std::span<const Integer> x) const;

  /// Rows d_i * e_i, one per torsion generator: the kernel of Z^n -> A.
  IntMatrix relation_matrix() const;

  std::string to_string() const;

  friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.factors_ == b.factors_;
  }

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> factors_;
};

class GroupMap {
 public:
  GroupMap() = default;
  /// `matrix` is codomain-generators x domain-generators. Entries are reduced
  /// modulo the codomain torsion orders; throws std::invalid_argument when
  /// the matrix does not define a homomorphism.
  GroupMap(FgAbGroup domain, FgAbGroup codomain, IntMatrix matrix);

  static GroupMap identity(const FgAbGroup& group);
  static GroupMap zero(const FgAbGroup& domain, const FgAbGroup& codomain);
  /// a -> m * a.
  static GroupMap multiplication(const FgAbGroup& group, const Integer& m);

  const FgAbGroup& domain() const { return domain_; }
  const FgAbGroup& codomain() const { return codomain_; }
  const IntMatrix& matrix() const { return matrix_; }

  Vector operator()(std::span<const Integer> x) const;

  bool is_zero() const { return matrix_.is_zero(); }
  bool is_endomorphism() const { return domain_ == codomain_; }
  /// The m with this == multiplication(domain, m), if any. For torsion-only
  /// groups m is returned in [0, exponent).
  std::optional<Integer> as_multiplication() const;

  friend bool operator==(const GroupMap& a, const GroupMap& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.matrix_ == b.matrix_;
  }

 private:
  FgAbGroup domain_;
  FgAbGroup codomain_;
  IntMatrix matrix_;
};

/// outer o inner.
GroupMap compose(const GroupMap& outer, const GroupMap& inner);
GroupMap operator+(const GroupMap& a, const GroupMap& b);
GroupMap operator-(const GroupMap& a, const GroupMap& b);
GroupMap power(const GroupMap& endo, std::size_t n);

/// Canonical form of Z^n / (row span of relations) plus the change of basis.
struct Presentation {
  FgAbGroup group;
  IntMatrix to_canonical;    // group.num_generators() x n
  IntMatrix from_canonical;  // n x group.num_generators()

  Vector canonical(std::span<const Integer> x) const { return group.reduce(to_canonical.apply(x)); }
};

Presentation group_from_presentation(std::size_t num_generators, const IntMatrix& relations);

class Subgroup {
 public:
  Subgroup(FgAbGroup ambient, std::vector<Vector> generators);

  static Subgroup whole(const FgAbGroup& ambient);
  static Subgroup trivial(const FgAbGroup& ambient);

  const FgAbGroup& ambient() const { return ambient_; }
  const std::vector<Vector>& generators() const { return generators_; }
  /// HNF basis of the preimage lattice in Z^n; canonical per subgroup.
  const IntMatrix& lattice() const { return lattice_; }

  bool contains(std::span<const Integer> x) const;
  /// Throws std::invalid_argument when the ambients differ.
  bool is_subgroup_of(const Subgroup& other) const;
  bool is_trivial() const;
  bool is_whole() const;
  /// |H| when finite.
  std::optional<Integer> order() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.ambient_ == b.ambient_ && a.lattice_ == b.lattice_;
  }

 private:
  FgAbGroup ambient_;
  std::vector<Vector> generators_;
  IntMatrix lattice_;
};

/// H == K as subsets of a common ambient; throws std::invalid_argument otherwise.
bool subgroup_equal(const Subgroup& h, const Subgroup& k);

Subgroup sum(const Subgroup& h, const Subgroup& k);
Subgroup image(const GroupMap& f);
/// f(H) for H a subgroup of f.domain().
Subgroup image(const GroupMap& f, const Subgroup& h);
Subgroup kernel(const GroupMap& f);
/// Elements of H of finite order coprime to m.
Subgroup coprime_torsion(const Subgroup& h, const Integer& m);
/// Largest divisor of d sharing no prime factor with m.
Integer coprime_part(Integer d, const Integer& m);

/// A subgroup promoted to a group in its own right.
class EmbeddedSubgroup {
 public:
  explicit EmbeddedSubgroup(Subgroup sub);

  const Subgroup& subgroup() const { return sub_; }
  const FgAbGroup& group() const { return presentation_.group; }
  /// group() -> ambient.
  const GroupMap& inclusion() const { return inclusion_; }
  /// Canonical coordinates of an ambient element lying in the subgroup;
  /// throws std::invalid_argument otherwise.
  Vector coordinates(std::span<const Integer> x) const;

 private:
  Subgroup sub_;
  Presentation presentation_;
  SmithForm solver_;
  GroupMap inclusion_;
};

struct Quotient {
  FgAbGroup group;
  GroupMap projection;  // ambient -> group
  IntMatrix lift;       // ambient.num_generators() x group.num_generators()

  Vector lift_element(std::span<const Integer> q) const;
};

Quotient quotient(const Subgroup& h);
/// Cokernel of f with its projection from f.codomain().
Quotient cokernel(const GroupMap& f);

/// The map source.group() -> target.group() induced by f. Requires f to carry
/// the subgroup behind `source` into the one behind `target`.
GroupMap restrict_map(const GroupMap& f, const EmbeddedSubgroup& source,
                      const EmbeddedSubgroup& target);
/// The map on quotients induced by f; requires f(H) inside K.
GroupMap induced_map(const GroupMap& f, const Quotient& source, const Quotient& target);

struct DirectSum {
  FgAbGroup group;
  std::vector<GroupMap> injections;
  std::vector<GroupMap> projections;
};

DirectSum direct_sum(std::span<const FgAbGroup> summands);

/// Every element exactly once. Throws std::domain_error for infinite groups
/// and CapExceeded when the order exceeds `cap`.
std::vector<Vector> enumerate_elements(const FgAbGroup& group,
                                       std::size_t cap = kDefaultEnumerationCap);
/// { x : n * x = 0 }; n must be nonzero.
std::vector<Vector> enumerate_torsion(const FgAbGroup& group, const Integer& n,
                                      std::size_t cap = kDefaultEnumerationCap);
/// All homomorphisms from a finite group.
std::vector<GroupMap> enumerate_homomorphisms(const FgAbGroup& from, const FgAbGroup& to,
                                              std::size_t cap = kDefaultEnumerationCap);

}  // namespace dlim
