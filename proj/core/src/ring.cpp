#include "ncimax/ring.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <variant>

#include "ncimax/errors.hpp"

namespace ncimax {

struct FiniteRing::Node {
  struct Mod {
    std::uint64_t n;
  };
  struct Product {
    FiniteRing left;
    FiniteRing right;
  };

  std::variant<Mod, Product> shape;
  std::size_t size;
};

namespace {

using Node = FiniteRing::Node;

struct Split {
  Element left;
  Element right;
};

}  // namespace

FiniteRing::FiniteRing(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

FiniteRing mod_ring(std::uint64_t n) {
  if (n == 0) {
    throw ContractViolation("mod_ring: modulus must be positive");
  }
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw ContractViolation("mod_ring: modulus too large");
  }
  return FiniteRing(std::make_shared<const Node>(Node{Node::Mod{n}, static_cast<std::size_t>(n)}));
}

FiniteRing product_ring(const FiniteRing& a, const FiniteRing& b) {
  const std::uint64_t size = static_cast<std::uint64_t>(a.size()) * b.size();
  if (size > std::numeric_limits<std::uint32_t>::max()) {
    throw ContractViolation("product_ring: product too large");
  }
  return FiniteRing(std::make_shared<const Node>(Node{Node::Product{a, b}, static_cast<std::size_t>(size)}));
}

std::size_t FiniteRing::size() const { return node_->size; }

void FiniteRing::require(Element a) const {
  if (a.index >= node_->size) {
    throw ContractViolation("element index " + std::to_string(a.index) + " is outside ring " + descriptor());
  }
}

Element FiniteRing::element(std::size_t canonical) const {
  if (canonical >= node_->size) {
    throw ContractViolation("canonical index " + std::to_string(canonical) + " is outside ring " + descriptor());
  }
  return Element{static_cast<std::uint32_t>(canonical)};
}

Element FiniteRing::zero() const { return Element{0}; }

Element FiniteRing::one() const {
  return std::visit(
      [](const auto& s) -> Element {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Node::Mod>) {
          return Element{static_cast<std::uint32_t>(s.n == 1 ? 0 : 1)};
        } else {
          const auto l = s.left.one().index;
          const auto r = s.right.one().index;
          return Element{static_cast<std::uint32_t>(l * s.right.size() + r)};
        }
      },
      node_->shape);
}

namespace {

Split split(const Node::Product& p, Element a) {
  const auto width = static_cast<std::uint32_t>(p.right.size());
  return {Element{a.index / width}, Element{a.index % width}};
}

Element join(const Node::Product& p, Element l, Element r) {
  return Element{static_cast<std::uint32_t>(l.index * p.right.size() + r.index)};
}

template <typename ModOp, typename ProdOp>
Element dispatch(const Node& node, ModOp mod_op, ProdOp prod_op) {
  if (const auto* m = std::get_if<Node::Mod>(&node.shape)) {
    return mod_op(m->n);
  }
  return prod_op(std::get<Node::Product>(node.shape));
}

}  // namespace

Element FiniteRing::add(Element a, Element b) const {
  require(a);
  require(b);
  return dispatch(
      *node_, [&](std::uint64_t n) { return Element{static_cast<std::uint32_t>((a.index + std::uint64_t{b.index}) % n)}; },
      [&](const Node::Product& p) {
        const auto [al, ar] = split(p, a);
        const auto [bl, br] = split(p, b);
        return join(p, p.left.add(al, bl), p.right.add(ar, br));
      });
}

Element FiniteRing::neg(Element a) const {
  require(a);
  return dispatch(
      *node_, [&](std::uint64_t n) { return Element{static_cast<std::uint32_t>((n - a.index) % n)}; },
      [&](const Node::Product& p) {
        const auto [al, ar] = split(p, a);
        return join(p, p.left.neg(al), p.right.neg(ar));
      });
}

Element FiniteRing::sub(Element a, Element b) const { return add(a, neg(b)); }

Element FiniteRing::mul(Element a, Element b) const {
  require(a);
  require(b);
  return dispatch(
      *node_,
      [&](std::uint64_t n) {
        return Element{static_cast<std::uint32_t>((std::uint64_t{a.index} * std::uint64_t{b.index}) % n)};
      },
      [&](const Node::Product& p) {
        const auto [al, ar] = split(p, a);
        const auto [bl, br] = split(p, b);
        return join(p, p.left.mul(al, bl), p.right.mul(ar, br));
      });
}

Element FiniteRing::pow(Element a, std::uint64_t e) const {
  require(a);
  Element result = one();
  Element base = a;
  while (e > 0) {
    if (e & 1U) {
      result = mul(result, base);
    }
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

std::string FiniteRing::descriptor() const {
  if (const auto* m = std::get_if<Node::Mod>(&node_->shape)) {
    return "zn:" + std::to_string(m->n);
  }
  const auto& p = std::get<Node::Product>(node_->shape);
  return "prod:" + p.left.descriptor() + "," + p.right.descriptor();
}

std::string FiniteRing::format(Element a) const {
  require(a);
  if (std::holds_alternative<Node::Mod>(node_->shape)) {
    return std::to_string(a.index);
  }
  const auto& p = std::get<Node::Product>(node_->shape);
  const auto [l, r] = split(p, a);
  return "(" + p.left.format(l) + "," + p.right.format(r) + ")";
}

bool operator==(const FiniteRing& a, const FiniteRing& b) {
  return a.node_ == b.node_ || a.descriptor() == b.descriptor();
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw ParseError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

// Recursive descent over `zn:<n>` | `prod:<desc>,<desc>`; advances `pos`.
FiniteRing parse_ring_at(std::string_view text, std::size_t& pos) {
  const auto rest = text.substr(pos);
  if (rest.starts_with("zn:")) {
    pos += 3;
    const auto start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    const auto n = parse_unsigned(text.substr(start, pos - start), "modulus");
    if (n == 0) {
      throw ParseError("modulus must be positive in '" + std::string(text) + "'");
    }
    return mod_ring(n);
  }
  if (rest.starts_with("prod:")) {
    pos += 5;
    auto left = parse_ring_at(text, pos);
    if (pos >= text.size() || text[pos] != ',') {
      throw ParseError("expected ',' in product descriptor '" + std::string(text) + "'");
    }
    ++pos;
    auto right = parse_ring_at(text, pos);
    return product_ring(left, right);
  }
  throw ParseError("unknown ring descriptor '" + std::string(text) + "'");
}

}  // namespace

FiniteRing parse_ring(std::string_view text) {
  text = trim(text);
  std::size_t pos = 0;
  auto ring = parse_ring_at(text, pos);
  if (pos != text.size()) {
    throw ParseError("trailing characters in ring descriptor '" + std::string(text) + "'");
  }
  return ring;
}

Element FiniteRing::parse_element(std::string_view text) const {
  text = trim(text);
  if (const auto* m = std::get_if<Node::Mod>(&node_->shape)) {
    const auto value = parse_unsigned(text, "element");
    if (value >= m->n) {
      throw ParseError("element " + std::string(text) + " out of range for " + descriptor());
    }
    return Element{static_cast<std::uint32_t>(value)};
  }
  const auto& p = std::get<Node::Product>(node_->shape);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
    throw ParseError("product element must look like (a,b): '" + std::string(text) + "'");
  }
  const auto inner = text.substr(1, text.size() - 2);
  // Split at the top-level comma.
  int depth = 0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (inner[i] == '(') ++depth;
    if (inner[i] == ')') --depth;
    if (inner[i] == ',' && depth == 0) {
      return join(p, p.left.parse_element(inner.substr(0, i)), p.right.parse_element(inner.substr(i + 1)));
    }
  }
  throw ParseError("product element must look like (a,b): '" + std::string(text) + "'");
}

ElementSet ElementSet::full(std::size_t universe) {
  ElementSet s(universe);
  s.bits_.assign(universe, true);
  return s;
}

ElementSet ElementSet::of(std::size_t universe, std::span<const Element> members) {
  ElementSet s(universe);
  for (const auto x : members) s.insert(x);
  return s;
}

std::size_t ElementSet::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

void ElementSet::insert(Element a) {
  if (a.index >= bits_.size()) {
    throw ContractViolation("ElementSet::insert: element outside universe");
  }
  bits_[a.index] = true;
}

void ElementSet::erase(Element a) {
  if (a.index < bits_.size()) bits_[a.index] = false;
}

bool ElementSet::is_subset_of(const ElementSet& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.contains(Element{static_cast<std::uint32_t>(i)})) return false;
  }
  return true;
}

ElementSet ElementSet::intersect(const ElementSet& other) const {
  ElementSet out(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    out.bits_[i] = bits_[i] && other.contains(Element{static_cast<std::uint32_t>(i)});
  }
  return out;
}

std::vector<Element> ElementSet::elements() const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(Element{static_cast<std::uint32_t>(i)});
  }
  return out;
}

Enumeration::Enumeration(FiniteRing ring, Element target) : ring_(std::move(ring)) {
  if (!ring_.contains(target)) {
    throw ContractViolation("make_enumeration: target is not an element of " + ring_.descriptor());
  }
  if (target == ring_.zero() || target == ring_.one()) {
    throw ContractViolation("make_enumeration: target must differ from 0 and 1");
  }
  const auto zero = ring_.zero();
  const auto one = ring_.one();
  order_.reserve(ring_.size());
  order_.push_back(zero);
  order_.push_back(one);
  order_.push_back(target);
  for (std::size_t c = 0; c < ring_.size(); ++c) {
    const auto x = ring_.element(c);
    if (x != zero && x != one && x != target) order_.push_back(x);
  }
  position_.assign(ring_.size(), 0);
  for (std::size_t n = 0; n < order_.size(); ++n) position_[order_[n].index] = n;
}

Element Enumeration::at(std::size_t n) const {
  if (n >= order_.size()) {
    throw ContractViolation("enumeration index " + std::to_string(n) + " out of range");
  }
  return order_[n];
}

std::size_t Enumeration::index_of(Element x) const {
  if (!ring_.contains(x)) {
    throw ContractViolation("index_of: element outside ring " + ring_.descriptor());
  }
  return position_[x.index];
}

Enumeration make_enumeration(const FiniteRing& ring, Element target) { return Enumeration(ring, target); }

}  // namespace ncimax
