#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ncimax {

/// A ring element, identified by its canonical index inside one FiniteRing.
/// Elements are interpreted against the ring passed to each operation; an
/// index outside that ring is a ContractViolation.
struct Element {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(const Element&, const Element&) = default;
};

/// Finite commutative ring with identity, either Z_n or a product of two
/// finite rings. Cheap to copy; the structure is shared and immutable.
///
/// Canonical indices: in Z_n the index is the residue; in A x B the pair
/// (a, b) has index a * |B| + b.
class FiniteRing {
 public:
  std::size_t size() const;

  Element zero() const;
  Element one() const;

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element mul(Element a, Element b) const;
  Element neg(Element a) const;
  Element pow(Element a, std::uint64_t e) const;

  /// Element with the given canonical index; throws if out of range.
  Element element(std::size_t canonical) const;
  bool contains(Element a) const { return a.index < size(); }

  /// Text form that parse_ring() accepts, e.g. "zn:4" or "prod:zn:4,zn:2".
  std::string descriptor() const;
  /// "3" in Z_n, "(2,1)" in products.
  std::string format(Element a) const;
  /// Inverse of format(); integers are taken as residues in Z_n.
  Element parse_element(std::string_view text) const;

  friend bool operator==(const FiniteRing& a, const FiniteRing& b);

  struct Node;

 private:
  explicit FiniteRing(std::shared_ptr<const Node> node);

  void require(Element a) const;

  std::shared_ptr<const Node> node_;

  friend FiniteRing mod_ring(std::uint64_t n);
  friend FiniteRing product_ring(const FiniteRing& a, const FiniteRing& b);
};

/// Z_n. Throws ContractViolation for n = 0.
FiniteRing mod_ring(std::uint64_t n);

/// Componentwise product a x b.
FiniteRing product_ring(const FiniteRing& a, const FiniteRing& b);

/// Parses `zn:<n>` and `prod:<desc>,<desc>` (nesting allowed).
FiniteRing parse_ring(std::string_view text);

/// Subset of a finite ring, stored as a bitmap over canonical indices.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : bits_(universe, false) {}

  static ElementSet full(std::size_t universe);
  static ElementSet of(std::size_t universe, std::span<const Element> members);

  std::size_t universe() const { return bits_.size(); }
  std::size_t count() const;
  bool empty() const { return count() == 0; }

  bool contains(Element a) const { return a.index < bits_.size() && bits_[a.index]; }
  void insert(Element a);
  void erase(Element a);

  bool is_subset_of(const ElementSet& other) const;
  ElementSet intersect(const ElementSet& other) const;

  /// Members in ascending canonical order.
  std::vector<Element> elements() const;

  friend bool operator==(const ElementSet&, const ElementSet&) = default;
  friend auto operator<=>(const ElementSet&, const ElementSet&) = default;

 private:
  std::vector<bool> bits_;
};

/// Bijective listing x_0, x_1, ... of a ring with x_0 = 0, x_1 = 1 and
/// x_2 = target; the remaining elements follow in ascending canonical order.
class Enumeration {
 public:
  /// Throws ContractViolation when target is 0 or 1 (callers short-circuit
  /// those) or not an element of the ring.
  Enumeration(FiniteRing ring, Element target);

  const FiniteRing& ring() const { return ring_; }
  Element target() const { return order_[2]; }
  std::size_t size() const { return order_.size(); }

  Element operator[](std::size_t n) const { return order_[n]; }
  Element at(std::size_t n) const;
  std::size_t index_of(Element x) const;

  std::span<const Element> order() const { return order_; }

 private:
  FiniteRing ring_;
  std::vector<Element> order_;
  std::vector<std::size_t> position_;
};

Enumeration make_enumeration(const FiniteRing& ring, Element target);

}  // namespace ncimax
