#include "dlim/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "dlim/error.hpp"

namespace dlim {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b)
    throw std::overflow_error("ordinal coefficient overflow");
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    throw std::overflow_error("ordinal coefficient overflow");
  return a * b;
}

const Ordinal& zero_ordinal() {
  static const Ordinal z;
  return z;
}

}  // namespace

Ordinal Ordinal::finite(std::uint64_t n) {
  Ordinal o;
  if (n > 0) o.terms_.push_back({std::make_shared<const Ordinal>(), n});
  return o;
}

Ordinal Ordinal::omega() { return omega_power(finite(1)); }

Ordinal Ordinal::omega_power(const Ordinal& exponent, std::uint64_t coefficient) {
  Ordinal o;
  if (coefficient > 0) o.terms_.push_back({std::make_shared<const Ordinal>(exponent), coefficient});
  return o;
}

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent->is_zero());
}

bool Ordinal::is_limit() const { return !terms_.empty() && !terms_.back().exponent->is_zero(); }

std::optional<std::uint64_t> Ordinal::as_finite() const {
  if (!is_finite()) return std::nullopt;
  return finite_part();
}

std::uint64_t Ordinal::finite_part() const {
  if (terms_.empty() || !terms_.back().exponent->is_zero()) return 0;
  return terms_.back().coefficient;
}

Ordinal Ordinal::succ() const { return *this + finite(1); }

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const Ordinal& lead = *b.terms_.front().exponent;
  Ordinal out;
  for (const auto& t : a.terms_) {
    const auto cmp = *t.exponent <=> lead;
    if (cmp > 0) {
      out.terms_.push_back(t);
    } else if (cmp == 0) {
      out.terms_.push_back({t.exponent, checked_add(t.coefficient, b.terms_.front().coefficient)});
    } else {
      break;
    }
  }
  const bool merged = !out.terms_.empty() && *out.terms_.back().exponent == lead;
  for (std::size_t i = merged ? 1 : 0; i < b.terms_.size(); ++i) out.terms_.push_back(b.terms_[i]);
  return out;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.terms_[i].exponent != b.terms_[i].exponent) {
      const auto e = *a.terms_[i].exponent <=> *b.terms_[i].exponent;
      if (e != 0) return e;
    }
    if (a.terms_[i].coefficient != b.terms_[i].coefficient)
      return a.terms_[i].coefficient <=> b.terms_[i].coefficient;
  }
  return a.terms_.size() <=> b.terms_.size();
}

std::string Ordinal::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    const Ordinal& e = *terms_[i].exponent;
    const std::uint64_t c = terms_[i].coefficient;
    if (e.is_zero()) {
      os << c;
      continue;
    }
    os << 'w';
    if (e.is_finite()) {
      if (e.finite_part() != 1) os << '^' << e.finite_part();
    } else {
      os << "^(" << e.to_string() << ')';
    }
    if (c != 1) os << '*' << c;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view text) : text_(text) {}

  Ordinal parse_all() {
    Ordinal o = parse_sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return o;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("ordinal: " + what, 1, pos_ + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_omega() {
    skip_space();
    if (pos_ < text_.size() && (text_[pos_] == 'w' || text_[pos_] == 'W')) {
      ++pos_;
      return true;
    }
    static constexpr std::string_view kOmega = "\xCF\x89";
    if (text_.substr(pos_, kOmega.size()) == kOmega) {
      pos_ += kOmega.size();
      return true;
    }
    return false;
  }

  std::optional<std::uint64_t> number() {
    skip_space();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      return std::nullopt;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = checked_add(checked_mul(v, 10), static_cast<std::uint64_t>(text_[pos_] - '0'));
      ++pos_;
    }
    return v;
  }

  Ordinal parse_sum() {
    Ordinal total = parse_term();
    while (accept('+')) total = total + parse_term();
    return total;
  }

  Ordinal parse_term() {
    Ordinal base = parse_atom();
    if (accept('*')) {
      const auto k = number();
      if (!k) fail("expected a natural number after '*'");
      if (*k == 0) return Ordinal();
      if (base.is_zero()) return base;
      if (base.is_finite()) return Ordinal::finite(checked_mul(base.finite_part(), *k));
      // base is a single power w^e here.
      return Ordinal::omega_power(*base.terms().front().exponent, *k);
    }
    return base;
  }

  Ordinal parse_atom() {
    if (const auto n = number()) return Ordinal::finite(*n);
    if (accept_omega()) {
      if (accept('^')) return Ordinal::omega_power(parse_power());
      return Ordinal::omega();
    }
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    fail("expected a number or 'w'");
  }

  Ordinal parse_power() {
    if (const auto n = number()) return Ordinal::finite(*n);
    if (accept('(')) {
      Ordinal inner = parse_sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (accept_omega()) {
      if (accept('^')) return Ordinal::omega_power(parse_power());
      return Ordinal::omega();
    }
    fail("expected an exponent");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal Ordinal::parse(std::string_view text) { return OrdinalParser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Random ordinals

namespace {

std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi_inclusive) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi_inclusive)(rng);
}

// Random ordinal strictly below w^exponent.
Ordinal random_below_power(const Ordinal& exponent, std::mt19937_64& rng) {
  if (exponent.is_zero()) return Ordinal();  // below 1
  const Ordinal e = random_ordinal_below(exponent, rng);
  if (e.is_zero()) return Ordinal::finite(uniform(rng, 0, 7));
  Ordinal head = Ordinal::omega_power(e, uniform(rng, 1, 3));
  if (uniform(rng, 0, 1) == 1) head = head + random_below_power(e, rng);
  return head;
}

}  // namespace

Ordinal random_ordinal_below(const Ordinal& bound, std::mt19937_64& rng) {
  if (bound.is_zero()) throw std::invalid_argument("random_ordinal_below: bound is 0");
  if (const auto n = bound.as_finite()) return Ordinal::finite(uniform(rng, 0, *n - 1));
  const auto& terms = bound.terms();
  const std::size_t k = uniform(rng, 0, terms.size() - 1);
  Ordinal out;
  for (std::size_t i = 0; i < k; ++i) out = out + Ordinal::omega_power(*terms[i].exponent, terms[i].coefficient);
  const std::uint64_t keep = uniform(rng, 0, terms[k].coefficient - 1);
  out = out + Ordinal::omega_power(*terms[k].exponent, keep);
  return out + random_below_power(*terms[k].exponent, rng);
}

// ---------------------------------------------------------------------------
// DegLexIndex

DegLexIndex::DegLexIndex(std::vector<Ordinal> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("DegLexIndex: empty sequence");
  for (std::size_t i = 1; i < entries_.size(); ++i)
    if (!(entries_[i - 1] < entries_[i]))
      throw std::invalid_argument("DegLexIndex: entries must be strictly increasing");
}

DegLexIndex::DegLexIndex(std::initializer_list<std::uint64_t> finite_entries)
    : DegLexIndex([&] {
        std::vector<Ordinal> v;
        for (auto n : finite_entries) v.push_back(Ordinal::finite(n));
        return v;
      }()) {}

DegLexIndex DegLexIndex::minimal(std::size_t length) {
  if (length == 0) throw std::invalid_argument("DegLexIndex::minimal: length 0");
  std::vector<Ordinal> v;
  for (std::size_t i = 0; i < length; ++i) v.push_back(Ordinal::finite(i));
  return DegLexIndex(std::move(v));
}

DegLexIndex DegLexIndex::parse(std::string_view text) {
  std::size_t begin = text.find_first_not_of(" \t");
  std::size_t end = text.find_last_not_of(" \t");
  if (begin == std::string_view::npos) throw ParseError("index: empty", 1, 1);
  std::size_t offset = begin;
  std::string_view body = text.substr(begin, end - begin + 1);
  if (body.front() == '[') {
    if (body.back() != ']') throw ParseError("index: missing ']'", 1, end + 1);
    body = body.substr(1, body.size() - 2);
    ++offset;
  }
  std::vector<Ordinal> entries;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = body.find(',', start);
    const std::string_view piece = body.substr(start, comma == std::string_view::npos ? body.npos : comma - start);
    try {
      entries.push_back(Ordinal::parse(piece));
    } catch (const ParseError& e) {
      throw ParseError(std::string("index entry: ") + e.what(), 1, offset + start + e.column());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  try {
    return DegLexIndex(std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), 1, begin + 1);
  }
}

DegLexIndex DegLexIndex::without_first() const {
  if (entries_.size() < 2) throw std::logic_error("DegLexIndex::without_first: length < 2");
  return DegLexIndex(std::vector<Ordinal>(entries_.begin() + 1, entries_.end()));
}

std::string DegLexIndex::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ", ";
    s += entries_[i].to_string();
  }
  return s + "]";
}

std::strong_ordering operator<=>(const DegLexIndex& a, const DegLexIndex& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto c = a[i] <=> b[i];
    if (c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::size_t deglex_descent_probe(const DegLexIndex& start, const DescentChooser& chooser,
                                 std::size_t step_cap) {
  DegLexIndex current = start;
  std::size_t steps = 0;
  while (auto next = chooser(current)) {
    if (!(*next < current))
      throw std::logic_error("descent chooser returned " + next->to_string() +
                             ", which is not below " + current.to_string());
    if (++steps > step_cap)
      throw CapExceeded("descent from " + start.to_string() + " exceeded " +
                        std::to_string(step_cap) + " steps");
    current = std::move(*next);
  }
  return steps;
}

DescentChooser random_descent_chooser(std::uint64_t seed, Ordinal bound) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng, bound = std::move(bound)](const DegLexIndex& s) -> std::optional<DegLexIndex> {
    const std::size_t n = s.size();
    std::vector<std::size_t> room;
    for (std::size_t m = 0; m < n; ++m) {
      const Ordinal lo = m == 0 ? zero_ordinal() : s[m - 1].succ();
      if (lo < s[m]) room.push_back(m);
    }
    const bool drop = n > 1 && (room.empty() || uniform(*rng, 0, 3) == 0);
    if (!drop) {
      if (room.empty()) return std::nullopt;
      const std::size_t m = room[uniform(*rng, 0, room.size() - 1)];
      const Ordinal lo = m == 0 ? zero_ordinal() : s[m - 1].succ();
      Ordinal x = random_ordinal_below(s[m], *rng);
      if (x < lo) x = lo;
      std::vector<Ordinal> entries = s.entries();
      entries[m] = x;
      return DegLexIndex(std::move(entries));
    }
    std::vector<Ordinal> entries;
    for (std::size_t i = 0; i + 1 < n; ++i) entries.push_back(random_ordinal_below(bound, *rng));
    std::sort(entries.begin(), entries.end());
    entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
    if (entries.size() + 1 < n) return DegLexIndex::minimal(n - 1);
    return DegLexIndex(std::move(entries));
  };
}

}  // namespace dlim
