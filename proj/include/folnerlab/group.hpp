#pragma once

// Countable discrete groups with canonical integer coordinates.
//
// Every group here is discrete, so the left Haar measure is counting
// measure and all Haar integrals over compact (= finite) sets are finite
// sums. Supported families: Z, Z^d, the discrete Heisenberg group H3 and
// finite direct products of these.

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace folnerlab {

/// Maximum number of integer coordinates of a single group element.
inline constexpr std::size_t kMaxRank = 8;

enum class GroupKind { integers, lattice, heisenberg, product };

/// Group element as a fixed-capacity coordinate tuple. `tag` identifies the
/// descriptor the element belongs to; operations refuse to mix tags.
struct Element {
  std::array<std::int64_t, kMaxRank> coords{};
  std::uint8_t rank = 0;
  std::uint32_t tag = 0;

  std::span<const std::int64_t> view() const { return {coords.data(), rank}; }
  std::int64_t operator[](std::size_t i) const { return coords[i]; }

  friend bool operator==(const Element& a, const Element& b) {
    if (a.tag != b.tag || a.rank != b.rank) return false;
    for (std::size_t i = 0; i < a.rank; ++i)
      if (a.coords[i] != b.coords[i]) return false;
    return true;
  }
};

std::string to_string(const Element& g);

class GroupDescriptor {
 public:
  /// One contiguous coordinate block of the flattened layout.
  struct Segment {
    GroupKind kind;  // integers, lattice or heisenberg; never product
    std::size_t offset;
    std::size_t length;
  };

  static GroupDescriptor integers();
  static GroupDescriptor lattice(int d);
  static GroupDescriptor heisenberg();
  static GroupDescriptor product(std::vector<GroupDescriptor> factors);

  /// Parses "Z", "Z^3", "H3", "Z x H3", "Z^2 x H3 x Z".
  static GroupDescriptor parse(std::string_view text);

  GroupKind kind() const;
  int dimension() const;  // lattice dimension; 1 for Z, 3 for H3
  const std::vector<GroupDescriptor>& factors() const;
  std::size_t rank() const;
  std::uint32_t tag() const;
  const std::string& name() const;
  const std::vector<Segment>& segments() const;
  bool is_abelian() const;
  /// True when every coordinate block is free abelian (Z or Z^d), so that
  /// integer scalar multiples t*g are defined coordinate-wise.
  bool is_z_module() const;

  Element identity() const;
  Element element(std::initializer_list<std::int64_t> coords) const;
  Element element(std::span<const std::int64_t> coords) const;
  Element multiply(const Element& g, const Element& h) const;
  Element inverse(const Element& g) const;
  /// g^t for the Z-module groups; throws ConfigError otherwise.
  Element scalar_multiple(std::int64_t t, const Element& g) const;

  /// Standard generators: unit vectors for Z^d, x=(1,0,0), y=(0,1,0) for H3,
  /// and embedded factor generators for products.
  std::vector<Element> generators() const;
  /// Factor i of a product element (or g itself for i == 0 on non-products).
  Element factor_element(const Element& g, std::size_t i) const;
  /// Inverse of factor_element: glue factor elements into a product element.
  Element join(std::span<const Element> parts) const;

  /// Throws DescriptorMismatch unless g belongs to this group.
  void check(const Element& g) const;

  friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
    return a.tag() == b.tag() && a.name() == b.name();
  }

 private:
  struct Impl;
  explicit GroupDescriptor(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

}  // namespace folnerlab
