#include "dlim/walker.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

#include "dlim/error.hpp"

namespace dlim {

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

void check_range(const WalkerContext& context, const DegLexIndex& index) {
  if (!index.bounded_by(context.alpha())) {
    throw std::out_of_range("walker: index " + index.to_string() + " has an entry >= " +
                            context.alpha().to_string());
  }
}

void require_same_context(const WalkerElement& x, const WalkerElement& y) {
  if (!(x.context() == y.context())) throw std::invalid_argument("walker: context mismatch");
}

}  // namespace

WalkerContext::WalkerContext(std::uint64_t p, Ordinal alpha) : p_(p), alpha_(std::move(alpha)) {
  if (!is_prime(p_)) throw std::invalid_argument("WalkerContext: " + std::to_string(p_) + " is not prime");
  if (alpha_.is_zero()) throw std::invalid_argument("WalkerContext: alpha must be positive");
}

WalkerElement::WalkerElement(WalkerContext context, Support raw) : context_(std::move(context)) {
  for (auto& [index, c] : raw) {
    check_range(context_, index);
    if (c != 0) support_.emplace(index, std::move(c));
  }
}

WalkerElement WalkerElement::zero(const WalkerContext& context) { return WalkerElement(context, {}); }

WalkerElement WalkerElement::basis(const WalkerContext& context, const DegLexIndex& index,
                                   const Integer& coefficient) {
  return WalkerElement(context, {{index, coefficient}});
}

WalkerElement WalkerElement::parse(const WalkerContext& context, std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& what) -> ParseError { return ParseError("element: " + what, 1, pos + 1); };

  skip();
  if (pos < text.size() && text[pos] == '0') {
    std::size_t after = pos + 1;
    while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
    if (after == text.size()) return zero(context);
  }

  Support support;
  bool first = true;
  while (true) {
    skip();
    int sign = 1;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    Integer coefficient = 1;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      const std::size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      coefficient = Integer(std::string(text.substr(start, pos - start)));
      skip();
      if (pos >= text.size() || text[pos] != '*') throw fail("expected '*'");
      ++pos;
      skip();
    }
    if (pos >= text.size() || text[pos] != 'e') throw fail("expected 'e[...]'");
    ++pos;
    skip();
    if (pos >= text.size() || text[pos] != '[') throw fail("expected '['");
    const std::size_t close = text.find(']', pos);
    if (close == std::string_view::npos) throw fail("missing ']'");
    DegLexIndex index = [&] {
      try {
        return DegLexIndex::parse(text.substr(pos, close - pos + 1));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), 1, pos + e.column());
      }
    }();
    pos = close + 1;
    support[index] += sign * coefficient;
    first = false;
    skip();
    if (pos == text.size()) break;
  }
  return WalkerElement(context, std::move(support));
}

std::optional<DegLexIndex> WalkerElement::leading_index() const {
  if (support_.empty()) return std::nullopt;
  return support_.rbegin()->first;
}

Integer WalkerElement::coefficient(const DegLexIndex& index) const {
  auto it = support_.find(index);
  return it == support_.end() ? Integer(0) : it->second;
}

std::string WalkerElement::to_string() const {
  if (support_.empty()) return "0";
  std::string out;
  for (auto it = support_.rbegin(); it != support_.rend(); ++it) {
    const Integer& c = it->second;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    out += Integer(abs(c)).get_str() + "*e" + it->first.to_string();
  }
  return out;
}

WalkerElement relation(const WalkerContext& context, const DegLexIndex& sigma) {
  const Integer p(static_cast<unsigned long>(context.p()));
  WalkerElement::Support s{{sigma, p}};
  if (sigma.size() >= 2) s.emplace(sigma.without_first(), -1);
  return WalkerElement(context, std::move(s));
}

WalkerElement normalize(const WalkerElement& x) {
  if (x.is_normalized()) return x;
  const Integer p(static_cast<unsigned long>(x.context().p()));
  WalkerElement::Support pending = x.support();
  WalkerElement::Support digits;
  // Carries only move mass to strictly smaller indices, so one descending
  // sweep settles every coefficient.
  while (!pending.empty()) {
    auto node = pending.extract(std::prev(pending.end()));
    const DegLexIndex& index = node.key();
    const Integer digit = mod_floor(node.mapped(), p);
    const Integer carry = (node.mapped() - digit) / p;
    if (carry != 0 && index.size() >= 2) {
      const DegLexIndex rest = index.without_first();
      Integer& slot = pending[rest];
      slot += carry;
      if (slot == 0) pending.erase(rest);
    }
    if (digit != 0) digits.emplace(index, digit);
  }
  WalkerElement out(x.context(), std::move(digits));
  out.normalized_ = true;
  return out;
}

WalkerElement add(const WalkerElement& x, const WalkerElement& y) {
  require_same_context(x, y);
  WalkerElement::Support s = x.support();
  for (const auto& [index, c] : y.support()) s[index] += c;
  return normalize(WalkerElement(x.context(), std::move(s)));
}

WalkerElement scalar_mul(const Integer& c, const WalkerElement& x) {
  WalkerElement::Support s;
  for (const auto& [index, v] : x.support()) s.emplace(index, c * v);
  return normalize(WalkerElement(x.context(), std::move(s)));
}

WalkerElement mul_by_p(const WalkerElement& x) {
  return scalar_mul(Integer(static_cast<unsigned long>(x.context().p())), x);
}

bool in_relations(const WalkerElement& x) { return normalize(x).is_zero(); }

Ordinal height(const WalkerElement& x) {
  const WalkerElement n = normalize(x);
  if (n.is_zero()) return x.context().alpha();
  Ordinal least = n.support().begin()->first.first();
  for (const auto& [index, c] : n.support()) {
    if (index.first() < least) least = index.first();
  }
  return least;
}

bool in_p_beta(const WalkerElement& x, const Ordinal& beta) {
  if (beta > x.context().alpha()) {
    throw std::invalid_argument("in_p_beta: " + beta.to_string() + " exceeds alpha " +
                                x.context().alpha().to_string());
  }
  return height(x) >= beta;
}

bool UlmProbeReport::passed() const {
  if (!alpha_stage_trivial || !heights_increase) return false;
  for (const UlmSample& s : samples) {
    if (!s.exact()) return false;
  }
  return true;
}

UlmProbeReport ulm_probe(const WalkerContext& context, const std::vector<Ordinal>& samples) {
  constexpr std::size_t kChainLength = 4;
  constexpr std::size_t kMaxSteps = 64;
  UlmProbeReport report;
  for (const Ordinal& beta : samples) {
    if (!(beta < context.alpha())) {
      throw std::invalid_argument("ulm_probe: sample " + beta.to_string() + " is not below alpha " +
                                  context.alpha().to_string());
    }
    const WalkerElement e = WalkerElement::basis(context, DegLexIndex({beta}));
    report.samples.push_back({beta, height(e), !in_relations(e)});

    // (beta, beta+1, ...) as long as the entries stay below alpha.
    std::vector<Ordinal> entries{beta};
    while (entries.size() < kChainLength && entries.back().succ() < context.alpha()) {
      entries.push_back(entries.back().succ());
    }
    WalkerElement x = normalize(WalkerElement::basis(context, DegLexIndex(entries)));
    bool ended = false;
    for (std::size_t step = 0; step < kMaxSteps; ++step) {
      const WalkerElement y = mul_by_p(x);
      if (y.is_zero()) {
        ended = true;
        break;
      }
      const Ordinal hy = height(y);
      if (!(hy < context.alpha())) report.alpha_stage_trivial = false;
      if (!(height(x) < hy)) report.heights_increase = false;
      x = y;
    }
    if (!ended) report.alpha_stage_trivial = false;
  }
  return report;
}

HeightStep mul_p_height_step(const WalkerElement& x) {
  if (in_relations(x)) throw std::invalid_argument("mul_p_height_step: x is zero");
  const WalkerElement y = mul_by_p(x);
  HeightStep step{height(x), std::nullopt};
  if (!y.is_zero()) step.after = height(y);
  return step;
}

}  // namespace dlim
