#pragma once

// Finite subsets of a discrete group. Cardinality is the Haar (counting)
// measure of the set and is always exact.

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <limits>
#include <span>
#include <vector>

#include "folnerlab/group.hpp"

namespace folnerlab {

/// A deduplicated finite set of group elements. Elements are stored as rows
/// of canonical coordinates in a flat buffer, sorted lexicographically, so
/// iteration order is canonical and independent of how the set was built.
class FiniteSubset {
 public:
  class const_iterator {
   public:
    using iterator_category = std::random_access_iterator_tag;
    using value_type = Element;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = Element;

    const_iterator() = default;
    const_iterator(const FiniteSubset* set, std::size_t i) : set_(set), i_(i) {}
    Element operator*() const { return (*set_)[i_]; }
    const_iterator& operator++() { ++i_; return *this; }
    const_iterator operator++(int) { auto t = *this; ++i_; return t; }
    difference_type operator-(const const_iterator& o) const {
      return static_cast<difference_type>(i_) - static_cast<difference_type>(o.i_);
    }
    bool operator==(const const_iterator& o) const { return i_ == o.i_; }

   private:
    const FiniteSubset* set_ = nullptr;
    std::size_t i_ = 0;
  };

  explicit FiniteSubset(GroupDescriptor group);
  FiniteSubset(GroupDescriptor group, std::span<const Element> elements);
  /// Takes ownership of row-major coordinates; sorts and deduplicates.
  static FiniteSubset from_rows(GroupDescriptor group, std::vector<std::int64_t> rows);

  const GroupDescriptor& group() const { return group_; }
  std::size_t rank() const { return rank_; }
  std::size_t size() const { return rank_ == 0 ? 0 : data_.size() / rank_; }
  bool empty() const { return data_.empty(); }
  Element operator[](std::size_t i) const;
  std::span<const std::int64_t> row(std::size_t i) const { return {data_.data() + i * rank_, rank_}; }
  const std::vector<std::int64_t>& rows() const { return data_; }
  bool contains(const Element& g) const;
  std::vector<Element> elements() const;

  const_iterator begin() const { return {this, 0}; }
  const_iterator end() const { return {this, size()}; }

  friend bool operator==(const FiniteSubset& a, const FiniteSubset& b) {
    return a.group_ == b.group_ && a.data_ == b.data_;
  }

 private:
  friend FiniteSubset translate(const Element& g, const FiniteSubset& F);

  GroupDescriptor group_;
  std::size_t rank_;
  std::vector<std::int64_t> data_;
};

/// Left translate gF.
FiniteSubset translate(const Element& g, const FiniteSubset& F);
/// Right translate Fg.
FiniteSubset right_translate(const FiniteSubset& F, const Element& g);
/// KF = {k f : k in K, f in F}. Throws BudgetExceeded once the result would
/// hold more than `budget` elements.
FiniteSubset product(const FiniteSubset& K, const FiniteSubset& F,
                     std::size_t budget = std::numeric_limits<std::size_t>::max());
FiniteSubset inverse_set(const FiniteSubset& F);
FiniteSubset set_union(const FiniteSubset& A, const FiniteSubset& B);
FiniteSubset set_intersection(const FiniteSubset& A, const FiniteSubset& B);
FiniteSubset set_difference(const FiniteSubset& A, const FiniteSubset& B);
FiniteSubset symmetric_difference(const FiniteSubset& A, const FiniteSubset& B);
/// |A (sym diff) B| without materialising the set.
std::size_t symmetric_difference_size(const FiniteSubset& A, const FiniteSubset& B);
bool is_subset(const FiniteSubset& A, const FiniteSubset& B);

/// Half-open integer interval [lo, hi) in Z.
FiniteSubset interval(std::int64_t lo, std::int64_t hi);
/// Box prod_i [lo_i, hi_i) in a group whose coordinates are all free
/// (Z^d, H3 coordinates, products); coordinates taken literally.
FiniteSubset coordinate_box(const GroupDescriptor& group, std::span<const std::int64_t> lo,
                            std::span<const std::int64_t> hi);
/// Cartesian product F_1 x ... x F_l inside the direct product group.
FiniteSubset cartesian_product(const GroupDescriptor& product_group, std::span<const FiniteSubset> factors);

}  // namespace folnerlab
