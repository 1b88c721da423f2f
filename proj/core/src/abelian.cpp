#include "dlim/abelian.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "dlim/error.hpp"

namespace dlim {

// ---------------------------------------------------------------------------
// FgAbGroup

FgAbGroup::FgAbGroup(std::size_t free_rank, std::vector<Integer> invariant_factors)
    : free_rank_(free_rank), factors_(std::move(invariant_factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2)
      throw std::invalid_argument("FgAbGroup: invariant factors must be >= 2");
    if (i > 0 && !mpz_divisible_p(factors_[i].get_mpz_t(), factors_[i - 1].get_mpz_t()))
      throw std::invalid_argument("FgAbGroup: invariant factors must form a divisibility chain");
  }
}

FgAbGroup FgAbGroup::free(std::size_t rank) { return FgAbGroup(rank, {}); }

FgAbGroup FgAbGroup::cyclic(const Integer& n) {
  const Integer m = abs(n);
  if (m == 0) return FgAbGroup(1, {});
  if (m == 1) return FgAbGroup();
  return FgAbGroup(0, {m});
}

Integer FgAbGroup::generator_order(std::size_t j) const {
  if (j >= num_generators()) throw std::out_of_range("FgAbGroup::generator_order");
  return j < factors_.size() ? factors_[j] : Integer(0);
}

std::optional<Integer> FgAbGroup::order() const {
  if (free_rank_ > 0) return std::nullopt;
  Integer n = 1;
  for (const auto& d : factors_) n *= d;
  return n;
}

Integer FgAbGroup::torsion_exponent() const { return factors_.empty() ? Integer(1) : factors_.back(); }

Vector FgAbGroup::generator(std::size_t j) const {
  Vector v = zero();
  v.at(j) = 1;
  return reduce(std::move(v));
}

Vector FgAbGroup::reduce(Vector x) const {
  if (x.size() != num_generators())
    throw std::invalid_argument("FgAbGroup::reduce: element has " + std::to_string(x.size()) +
                                " coordinates, group " + to_string() + " has " +
                                std::to_string(num_generators()) + " generators");
  for (std::size_t j = 0; j < factors_.size(); ++j) x[j] = mod_floor(x[j], factors_[j]);
  return x;
}

bool FgAbGroup::is_reduced(std::span<const Integer> x) const {
  if (x.size() != num_generators()) return false;
  for (std::size_t j = 0; j < factors_.size(); ++j)
    if (x[j] < 0 || x[j] >= factors_[j]) return false;
  return true;
}

bool FgAbGroup::is_zero(std::span<const Integer> x) const {
  const Vector r = reduce(Vector(x.begin(), x.end()));
  for (const auto& v : r)
    if (v != 0) return false;
  return true;
}

Vector FgAbGroup::add(std::span<const Integer> a, std::span<const Integer> b) const {
  if (a.size() != b.size()) throw std::invalid_argument("FgAbGroup::add: size mismatch");
  Vector s(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) s[j] = a[j] + b[j];
  return reduce(std::move(s));
}

Vector FgAbGroup::scale(const Integer& c, std::span<const Integer> x) const {
  Vector s(x.begin(), x.end());
  for (auto& v : s) v *= c;
  return reduce(std::move(s));
}

IntMatrix FgAbGroup::relation_matrix() const {
  IntMatrix r(factors_.size(), num_generators());
  for (std::size_t j = 0; j < factors_.size(); ++j) r(j, j) = factors_[j];
  return r;
}

std::string FgAbGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& d : factors_) {
    os << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  if (free_rank_ > 0) {
    os << (first ? "" : " + ") << "Z";
    if (free_rank_ > 1) os << '^' << free_rank_;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// GroupMap

GroupMap::GroupMap(FgAbGroup domain, FgAbGroup codomain, IntMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
  const std::size_t n = domain_.num_generators();
  const std::size_t m = codomain_.num_generators();
  if (matrix_.rows() != m || matrix_.cols() != n) {
    // A 0 x 0 matrix is how an empty JSON matrix arrives; accept it for any
    // map touching a trivial group.
    if (matrix_.rows() * matrix_.cols() == 0 && (m == 0 || n == 0)) {
      matrix_ = IntMatrix(m, n);
    } else {
      throw std::invalid_argument("GroupMap: matrix is " + std::to_string(matrix_.rows()) + "x" +
                                  std::to_string(matrix_.cols()) + ", expected " +
                                  std::to_string(m) + "x" + std::to_string(n));
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Integer b = codomain_.generator_order(i);
    for (std::size_t j = 0; j < n; ++j) {
      Integer& e = matrix_(i, j);
      if (b != 0) e = mod_floor(e, b);
      const Integer a = domain_.generator_order(j);
      if (a == 0) continue;
      const bool ok = b == 0 ? e == 0 : mpz_divisible_p(Integer(a * e).get_mpz_t(), b.get_mpz_t()) != 0;
      if (!ok)
        throw std::invalid_argument("GroupMap: generator " + std::to_string(j) + " of order " +
                                    a.get_str() + " cannot map to coordinate " + e.get_str() +
                                    " of " + codomain_.to_string());
    }
  }
}

GroupMap GroupMap::identity(const FgAbGroup& group) {
  return GroupMap(group, group, IntMatrix::identity(group.num_generators()));
}

GroupMap GroupMap::zero(const FgAbGroup& domain, const FgAbGroup& codomain) {
  return GroupMap(domain, codomain, IntMatrix(codomain.num_generators(), domain.num_generators()));
}

GroupMap GroupMap::multiplication(const FgAbGroup& group, const Integer& m) {
  IntMatrix mat(group.num_generators(), group.num_generators());
  for (std::size_t j = 0; j < group.num_generators(); ++j) mat(j, j) = m;
  return GroupMap(group, group, std::move(mat));
}

Vector GroupMap::operator()(std::span<const Integer> x) const {
  return codomain_.reduce(matrix_.apply(x));
}

std::optional<Integer> GroupMap::as_multiplication() const {
  if (!is_endomorphism()) return std::nullopt;
  const std::size_t n = domain_.num_generators();
  if (n == 0) return Integer(0);
  const std::size_t probe = domain_.free_rank() > 0 ? domain_.torsion_count() : n - 1;
  Integer m = matrix_(probe, probe);
  if (multiplication(domain_, m) == *this) return m;
  return std::nullopt;
}

GroupMap compose(const GroupMap& outer, const GroupMap& inner) {
  if (!(inner.codomain() == outer.domain()))
    throw std::invalid_argument("compose: " + inner.codomain().to_string() + " vs " +
                                outer.domain().to_string());
  return GroupMap(inner.domain(), outer.codomain(), outer.matrix() * inner.matrix());
}

GroupMap operator+(const GroupMap& a, const GroupMap& b) {
  if (!(a.domain() == b.domain()) || !(a.codomain() == b.codomain()))
    throw std::invalid_argument("GroupMap sum: shape mismatch");
  return GroupMap(a.domain(), a.codomain(), a.matrix() + b.matrix());
}

GroupMap operator-(const GroupMap& a, const GroupMap& b) {
  if (!(a.domain() == b.domain()) || !(a.codomain() == b.codomain()))
    throw std::invalid_argument("GroupMap difference: shape mismatch");
  return GroupMap(a.domain(), a.codomain(), a.matrix() - b.matrix());
}

GroupMap power(const GroupMap& endo, std::size_t n) {
  if (!endo.is_endomorphism()) throw std::invalid_argument("power: not an endomorphism");
  GroupMap result = GroupMap::identity(endo.domain());
  for (std::size_t k = 0; k < n; ++k) result = compose(endo, result);
  return result;
}

// ---------------------------------------------------------------------------
// Presentations

Presentation group_from_presentation(std::size_t num_generators, const IntMatrix& relations) {
  if (relations.rows() > 0 && relations.cols() != num_generators)
    throw std::invalid_argument("group_from_presentation: relation width != generator count");
  if (relations.rows() == 0) {
    return Presentation{FgAbGroup::free(num_generators), IntMatrix::identity(num_generators),
                        IntMatrix::identity(num_generators)};
  }
  const SmithForm snf = smith_normal_form(relations);
  std::vector<std::size_t> kept;
  std::vector<Integer> factors;
  std::size_t free_rank = 0;
  for (std::size_t j = 0; j < num_generators; ++j) {
    const Integer d = snf.diagonal(j);
    if (d == 1) continue;
    kept.push_back(j);
    if (d == 0)
      ++free_rank;
    else
      factors.push_back(d);
  }
  FgAbGroup group(free_rank, std::move(factors));
  IntMatrix to(kept.size(), num_generators);
  IntMatrix from(num_generators, kept.size());
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const std::size_t j = kept[c];
    const Integer order = group.generator_order(c);
    for (std::size_t i = 0; i < num_generators; ++i) {
      to(c, i) = order == 0 ? snf.V(i, j) : mod_floor(snf.V(i, j), order);
      from(i, c) = snf.V_inverse(j, i);
    }
  }
  return Presentation{std::move(group), std::move(to), std::move(from)};
}

// ---------------------------------------------------------------------------
// Subgroups

namespace {

std::vector<Vector> reduced_nonzero(const FgAbGroup& ambient, std::vector<Vector> gens) {
  std::vector<Vector> out;
  out.reserve(gens.size());
  for (auto& g : gens) {
    Vector r = ambient.reduce(std::move(g));
    bool zero = true;
    for (const auto& v : r)
      if (v != 0) zero = false;
    if (!zero) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Subgroup::Subgroup(FgAbGroup ambient, std::vector<Vector> generators)
    : ambient_(std::move(ambient)), generators_(reduced_nonzero(ambient_, std::move(generators))) {
  const std::size_t n = ambient_.num_generators();
  lattice_ = hermite_row_basis(IntMatrix::from_rows(generators_, n).stacked(ambient_.relation_matrix()));
  if (lattice_.cols() != n) lattice_ = IntMatrix(0, n);
}

Subgroup Subgroup::whole(const FgAbGroup& ambient) {
  std::vector<Vector> gens;
  for (std::size_t j = 0; j < ambient.num_generators(); ++j) gens.push_back(ambient.generator(j));
  return Subgroup(ambient, std::move(gens));
}

Subgroup Subgroup::trivial(const FgAbGroup& ambient) { return Subgroup(ambient, {}); }

bool Subgroup::contains(std::span<const Integer> x) const {
  const Vector r = hermite_reduce(lattice_, ambient_.reduce(Vector(x.begin(), x.end())));
  for (const auto& v : r)
    if (v != 0) return false;
  return true;
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  if (!(ambient_ == other.ambient_))
    throw std::invalid_argument("Subgroup::is_subgroup_of: ambient mismatch");
  for (const auto& g : generators_)
    if (!other.contains(g)) return false;
  return true;
}

bool Subgroup::is_trivial() const { return generators_.empty(); }

bool Subgroup::is_whole() const {
  return lattice_ == IntMatrix::identity(ambient_.num_generators());
}

std::optional<Integer> Subgroup::order() const {
  if (ambient_.is_finite()) {
    Integer index = 1;
    std::size_t c = 0;
    for (std::size_t k = 0; k < lattice_.rows(); ++k) {
      while (lattice_(k, c) == 0) ++c;
      index *= lattice_(k, c);
    }
    return *ambient_.order() / index;
  }
  return EmbeddedSubgroup(*this).group().order();
}

bool subgroup_equal(const Subgroup& h, const Subgroup& k) {
  if (!(h.ambient() == k.ambient())) throw std::invalid_argument("subgroup_equal: ambient mismatch");
  return h.lattice() == k.lattice();
}

Subgroup sum(const Subgroup& h, const Subgroup& k) {
  if (!(h.ambient() == k.ambient())) throw std::invalid_argument("sum: ambient mismatch");
  std::vector<Vector> gens = h.generators();
  gens.insert(gens.end(), k.generators().begin(), k.generators().end());
  return Subgroup(h.ambient(), std::move(gens));
}

Subgroup image(const GroupMap& f) { return image(f, Subgroup::whole(f.domain())); }

Subgroup image(const GroupMap& f, const Subgroup& h) {
  if (!(h.ambient() == f.domain())) throw std::invalid_argument("image: subgroup not in domain");
  std::vector<Vector> gens;
  gens.reserve(h.generators().size());
  for (const auto& g : h.generators()) gens.push_back(f(g));
  return Subgroup(f.codomain(), std::move(gens));
}

Subgroup kernel(const GroupMap& f) {
  const std::size_t n = f.domain().num_generators();
  // Solve M x = sum_i y_i d_i e_i: the kernel of [M | -diag(d)].
  IntMatrix rel_cols = f.codomain().relation_matrix().transpose();
  for (std::size_t i = 0; i < rel_cols.rows(); ++i)
    for (std::size_t j = 0; j < rel_cols.cols(); ++j) rel_cols(i, j) = -rel_cols(i, j);
  const IntMatrix system = f.matrix().joined(rel_cols);
  const IntMatrix basis = integer_kernel(system);
  std::vector<Vector> gens;
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    Vector row = basis.row(r);
    row.resize(n);
    gens.push_back(std::move(row));
  }
  return Subgroup(f.domain(), std::move(gens));
}

Integer coprime_part(Integer d, const Integer& m) {
  d = abs(d);
  if (m == 0) return 1;
  Integer g = gcd(d, m);
  while (g > 1) {
    d /= g;
    g = gcd(d, m);
  }
  return d;
}

Subgroup coprime_torsion(const Subgroup& h, const Integer& m) {
  const EmbeddedSubgroup embedded(h);
  const FgAbGroup& g = embedded.group();
  std::vector<Vector> gens;
  for (std::size_t j = 0; j < g.torsion_count(); ++j) {
    const Integer d = g.generator_order(j);
    const Integer keep = coprime_part(d, m);
    gens.push_back(embedded.inclusion()(g.scale(d / keep, g.generator(j))));
  }
  return Subgroup(h.ambient(), std::move(gens));
}

// ---------------------------------------------------------------------------
// EmbeddedSubgroup

EmbeddedSubgroup::EmbeddedSubgroup(Subgroup sub) : sub_(std::move(sub)) {
  const FgAbGroup& ambient = sub_.ambient();
  const std::size_t n = ambient.num_generators();
  const std::size_t s = sub_.generators().size();
  const IntMatrix gens = IntMatrix::from_columns(sub_.generators(), n);
  const IntMatrix system = gens.joined(ambient.relation_matrix().transpose());
  solver_ = smith_normal_form(system);

  const IntMatrix null = integer_kernel(system);
  IntMatrix relations(null.rows(), s);
  for (std::size_t r = 0; r < null.rows(); ++r)
    for (std::size_t j = 0; j < s; ++j) relations(r, j) = null(r, j);
  presentation_ = group_from_presentation(s, relations);
  inclusion_ = GroupMap(presentation_.group, ambient, gens * presentation_.from_canonical);
}

Vector EmbeddedSubgroup::coordinates(std::span<const Integer> x) const {
  const Vector target = sub_.ambient().reduce(Vector(x.begin(), x.end()));
  const auto z = solve_integer(solver_, target);
  if (!z) throw std::invalid_argument("EmbeddedSubgroup::coordinates: element not in subgroup");
  const Vector c(z->begin(), z->begin() + static_cast<std::ptrdiff_t>(sub_.generators().size()));
  return presentation_.canonical(c);
}

// ---------------------------------------------------------------------------
// Quotients and induced maps

Vector Quotient::lift_element(std::span<const Integer> q) const {
  return projection.domain().reduce(lift.apply(q));
}

Quotient quotient(const Subgroup& h) {
  const FgAbGroup& ambient = h.ambient();
  const std::size_t n = ambient.num_generators();
  const IntMatrix relations =
      ambient.relation_matrix().stacked(IntMatrix::from_rows(h.generators(), n));
  Presentation pres = group_from_presentation(n, relations.rows() ? relations : IntMatrix(0, n));
  GroupMap projection(ambient, pres.group, pres.to_canonical);
  return Quotient{pres.group, std::move(projection), std::move(pres.from_canonical)};
}

Quotient cokernel(const GroupMap& f) { return quotient(image(f)); }

GroupMap restrict_map(const GroupMap& f, const EmbeddedSubgroup& source,
                      const EmbeddedSubgroup& target) {
  if (!(source.subgroup().ambient() == f.domain()) || !(target.subgroup().ambient() == f.codomain()))
    throw std::invalid_argument("restrict_map: subgroups do not live in the map's groups");
  const FgAbGroup& from = source.group();
  std::vector<Vector> columns;
  for (std::size_t j = 0; j < from.num_generators(); ++j)
    columns.push_back(target.coordinates(f(source.inclusion()(from.generator(j)))));
  return GroupMap(from, target.group(),
                  IntMatrix::from_columns(columns, target.group().num_generators()));
}

GroupMap induced_map(const GroupMap& f, const Quotient& source, const Quotient& target) {
  if (!(source.projection.domain() == f.domain()) || !(target.projection.domain() == f.codomain()))
    throw std::invalid_argument("induced_map: quotients do not match the map");
  std::vector<Vector> columns;
  for (std::size_t j = 0; j < source.group.num_generators(); ++j)
    columns.push_back(target.projection(f(source.lift_element(source.group.generator(j)))));
  return GroupMap(source.group, target.group,
                  IntMatrix::from_columns(columns, target.group.num_generators()));
}

// ---------------------------------------------------------------------------
// Direct sums

DirectSum direct_sum(std::span<const FgAbGroup> summands) {
  std::size_t n = 0;
  std::size_t k = 0;
  for (const auto& s : summands) {
    n += s.num_generators();
    k += s.torsion_count();
  }
  IntMatrix relations(k, n);
  std::vector<std::size_t> offsets;
  std::size_t col = 0, row = 0;
  for (const auto& s : summands) {
    offsets.push_back(col);
    for (std::size_t j = 0; j < s.torsion_count(); ++j) relations(row++, col + j) = s.generator_order(j);
    col += s.num_generators();
  }
  const Presentation pres = group_from_presentation(n, relations.rows() ? relations : IntMatrix(0, n));
  DirectSum out{pres.group, {}, {}};
  const std::size_t m = pres.group.num_generators();
  for (std::size_t s = 0; s < summands.size(); ++s) {
    const std::size_t w = summands[s].num_generators();
    out.injections.emplace_back(summands[s], pres.group, pres.to_canonical.submatrix(0, offsets[s], m, w));
    out.projections.emplace_back(pres.group, summands[s], pres.from_canonical.submatrix(offsets[s], 0, w, m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

// Mixed-radix walk over per-coordinate candidate lists.
std::vector<Vector> cartesian(const std::vector<std::vector<Integer>>& choices, std::size_t cap) {
  Integer total = 1;
  for (const auto& c : choices) total *= static_cast<unsigned long>(c.size());
  if (total > Integer(static_cast<unsigned long>(cap)))
    throw CapExceeded("enumeration of " + total.get_str() + " elements exceeds cap " +
                      std::to_string(cap));
  std::vector<Vector> out;
  out.reserve(total.get_ui());
  std::vector<std::size_t> idx(choices.size(), 0);
  for (;;) {
    Vector v(choices.size());
    for (std::size_t j = 0; j < choices.size(); ++j) v[j] = choices[j][idx[j]];
    out.push_back(std::move(v));
    std::size_t j = 0;
    while (j < choices.size() && ++idx[j] == choices[j].size()) idx[j++] = 0;
    if (j == choices.size()) break;
  }
  return out;
}

}  // namespace

std::vector<Vector> enumerate_elements(const FgAbGroup& group, std::size_t cap) {
  if (!group.is_finite())
    throw std::domain_error("enumerate_elements: " + group.to_string() + " is infinite");
  std::vector<std::vector<Integer>> choices;
  for (const auto& d : group.invariant_factors()) {
    if (d > Integer(static_cast<unsigned long>(cap)))
      throw CapExceeded("enumeration exceeds cap " + std::to_string(cap));
    std::vector<Integer> c;
    for (unsigned long t = 0; t < d.get_ui(); ++t) c.emplace_back(t);
    choices.push_back(std::move(c));
  }
  return cartesian(choices, cap);
}

std::vector<Vector> enumerate_torsion(const FgAbGroup& group, const Integer& n, std::size_t cap) {
  if (n == 0) return enumerate_elements(group, cap);
  std::vector<std::vector<Integer>> choices;
  for (std::size_t j = 0; j < group.num_generators(); ++j) {
    const Integer d = group.generator_order(j);
    if (d == 0) {
      choices.push_back({Integer(0)});
      continue;
    }
    const Integer g = gcd(n, d);
    if (g > Integer(static_cast<unsigned long>(cap)))
      throw CapExceeded("enumeration exceeds cap " + std::to_string(cap));
    const Integer step = d / g;
    std::vector<Integer> c;
    for (unsigned long t = 0; t < g.get_ui(); ++t) c.emplace_back(step * t);
    choices.push_back(std::move(c));
  }
  return cartesian(choices, cap);
}

std::vector<GroupMap> enumerate_homomorphisms(const FgAbGroup& from, const FgAbGroup& to,
                                              std::size_t cap) {
  if (!from.is_finite())
    throw std::domain_error("enumerate_homomorphisms: domain " + from.to_string() + " is infinite");
  std::vector<std::vector<Vector>> images;
  Integer total = 1;
  for (std::size_t j = 0; j < from.num_generators(); ++j) {
    images.push_back(enumerate_torsion(to, from.generator_order(j), cap));
    total *= static_cast<unsigned long>(images.back().size());
    if (total > Integer(static_cast<unsigned long>(cap)))
      throw CapExceeded("hom-set enumeration exceeds cap " + std::to_string(cap));
  }
  std::vector<GroupMap> out;
  std::vector<std::size_t> idx(images.size(), 0);
  for (;;) {
    std::vector<Vector> columns;
    for (std::size_t j = 0; j < images.size(); ++j) columns.push_back(images[j][idx[j]]);
    out.emplace_back(from, to, IntMatrix::from_columns(columns, to.num_generators()));
    std::size_t j = 0;
    while (j < images.size() && ++idx[j] == images[j].size()) idx[j++] = 0;
    if (j == images.size()) break;
  }
  return out;
}

}  // namespace dlim
