#include "folnerlab/finite_set.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "folnerlab/error.hpp"

namespace folnerlab {

namespace {

using Row = const std::int64_t*;

inline int compare_rows(Row a, Row b, std::size_t r) {
  for (std::size_t i = 0; i < r; ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

bool rows_sorted_unique(const std::vector<std::int64_t>& data, std::size_t r) {
  const std::size_t n = data.size() / r;
  for (std::size_t i = 1; i < n; ++i)
    if (compare_rows(data.data() + (i - 1) * r, data.data() + i * r, r) >= 0) return false;
  return true;
}

void sort_unique_rows(std::vector<std::int64_t>& data, std::size_t r) {
  if (rows_sorted_unique(data, r)) return;
  if (r == 1) {
    std::sort(data.begin(), data.end());
    data.erase(std::unique(data.begin(), data.end()), data.end());
    return;
  }
  const std::size_t n = data.size() / r;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return compare_rows(data.data() + a * r, data.data() + b * r, r) < 0;
  });
  std::vector<std::int64_t> out;
  out.reserve(data.size());
  Row prev = nullptr;
  for (auto idx : order) {
    Row cur = data.data() + idx * r;
    if (prev && compare_rows(prev, cur, r) == 0) continue;
    out.insert(out.end(), cur, cur + r);
    prev = cur;
  }
  data = std::move(out);
}

enum class MergeMode { unite, intersect, difference, symmetric };

std::vector<std::int64_t> merge_rows(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                                     std::size_t r, MergeMode mode) {
  std::vector<std::int64_t> out;
  const std::size_t na = a.size() / r, nb = b.size() / r;
  std::size_t i = 0, j = 0;
  auto emit = [&](Row p) { out.insert(out.end(), p, p + r); };
  while (i < na && j < nb) {
    Row pa = a.data() + i * r, pb = b.data() + j * r;
    const int c = compare_rows(pa, pb, r);
    if (c < 0) {
      if (mode != MergeMode::intersect) emit(pa);
      ++i;
    } else if (c > 0) {
      if (mode == MergeMode::unite || mode == MergeMode::symmetric) emit(pb);
      ++j;
    } else {
      if (mode == MergeMode::unite || mode == MergeMode::intersect) emit(pa);
      ++i;
      ++j;
    }
  }
  if (mode != MergeMode::intersect)
    for (; i < na; ++i) emit(a.data() + i * r);
  if (mode == MergeMode::unite || mode == MergeMode::symmetric)
    for (; j < nb; ++j) emit(b.data() + j * r);
  return out;
}

void require_same_group(const FiniteSubset& A, const FiniteSubset& B) {
  if (!(A.group() == B.group()))
    throw DescriptorMismatch("sets belong to different groups: " + A.group().name() + " vs " +
                             B.group().name());
}

}  // namespace

FiniteSubset::FiniteSubset(GroupDescriptor group) : group_(std::move(group)), rank_(group_.rank()) {}

FiniteSubset::FiniteSubset(GroupDescriptor group, std::span<const Element> elements)
    : group_(std::move(group)), rank_(group_.rank()) {
  data_.reserve(elements.size() * rank_);
  for (const auto& g : elements) {
    group_.check(g);
    data_.insert(data_.end(), g.coords.begin(), g.coords.begin() + rank_);
  }
  sort_unique_rows(data_, rank_);
}

FiniteSubset FiniteSubset::from_rows(GroupDescriptor group, std::vector<std::int64_t> rows) {
  FiniteSubset s(std::move(group));
  if (rows.size() % s.rank_ != 0) throw DescriptorMismatch("row buffer length is not a multiple of the rank");
  s.data_ = std::move(rows);
  sort_unique_rows(s.data_, s.rank_);
  return s;
}

Element FiniteSubset::operator[](std::size_t i) const {
  Element g = group_.identity();
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(i * rank_), rank_, g.coords.begin());
  return g;
}

bool FiniteSubset::contains(const Element& g) const {
  group_.check(g);
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const int c = compare_rows(data_.data() + mid * rank_, g.coords.data(), rank_);
    if (c == 0) return true;
    if (c < 0) lo = mid + 1;
    else hi = mid;
  }
  return false;
}

std::vector<Element> FiniteSubset::elements() const { return {begin(), end()}; }

namespace {

template <class Map>
FiniteSubset map_rows(const FiniteSubset& F, Map&& map) {
  const std::size_t r = F.rank();
  std::vector<std::int64_t> out(F.rows().size());
  for (std::size_t i = 0; i < F.size(); ++i) {
    const Element image = map(F[i]);
    std::copy_n(image.coords.begin(), r, out.begin() + static_cast<std::ptrdiff_t>(i * r));
  }
  return FiniteSubset::from_rows(F.group(), std::move(out));
}

}  // namespace

FiniteSubset translate(const Element& g, const FiniteSubset& F) {
  const auto& G = F.group();
  G.check(g);
  const std::size_t r = F.rank();
  std::vector<std::int64_t> out(F.rows());
  for (std::size_t i = 0; i < out.size(); i += r) {
    std::int64_t* row = out.data() + i;
    for (const auto& seg : G.segments()) {
      const std::size_t o = seg.offset;
      if (seg.kind == GroupKind::heisenberg) {
        row[o + 2] += g.coords[o + 2] + g.coords[o] * row[o + 1];
        row[o] += g.coords[o];
        row[o + 1] += g.coords[o + 1];
      } else {
        for (std::size_t k = o; k < o + seg.length; ++k) row[k] += g.coords[k];
      }
    }
  }
  // Left translation preserves lexicographic order in Z^d, H3 and their
  // products, so the buffer needs no re-sort.
  FiniteSubset out_set(G);
  out_set.data_ = std::move(out);
  return out_set;
}

FiniteSubset right_translate(const FiniteSubset& F, const Element& g) {
  F.group().check(g);
  const auto& G = F.group();
  return map_rows(F, [&](const Element& f) { return G.multiply(f, g); });
}

FiniteSubset inverse_set(const FiniteSubset& F) {
  const auto& G = F.group();
  return map_rows(F, [&](const Element& f) { return G.inverse(f); });
}

FiniteSubset product(const FiniteSubset& K, const FiniteSubset& F, std::size_t budget) {
  require_same_group(K, F);
  const auto& G = F.group();
  const std::size_t r = G.rank();
  // Translates kF are accumulated in chunks, each sorted and merged into the
  // running union, so memory stays proportional to the result.
  constexpr std::size_t kChunkRows = std::size_t{1} << 20;
  std::vector<std::int64_t> acc;
  std::vector<std::int64_t> chunk;
  auto flush = [&] {
    if (chunk.empty()) return;
    sort_unique_rows(chunk, r);
    acc = merge_rows(acc, chunk, r, MergeMode::unite);
    chunk.clear();
    if (acc.size() / r > budget)
      throw BudgetExceeded("set product exceeds the element budget of " + std::to_string(budget));
  };
  for (std::size_t i = 0; i < K.size(); ++i) {
    const Element k = K[i];
    for (std::size_t j = 0; j < F.size(); ++j) {
      const Element kf = G.multiply(k, F[j]);
      chunk.insert(chunk.end(), kf.coords.begin(), kf.coords.begin() + r);
    }
    if (chunk.size() / r >= kChunkRows) flush();
  }
  flush();
  return FiniteSubset::from_rows(G, std::move(acc));
}

FiniteSubset set_union(const FiniteSubset& A, const FiniteSubset& B) {
  require_same_group(A, B);
  return FiniteSubset::from_rows(A.group(), merge_rows(A.rows(), B.rows(), A.rank(), MergeMode::unite));
}

FiniteSubset set_intersection(const FiniteSubset& A, const FiniteSubset& B) {
  require_same_group(A, B);
  return FiniteSubset::from_rows(A.group(), merge_rows(A.rows(), B.rows(), A.rank(), MergeMode::intersect));
}

FiniteSubset set_difference(const FiniteSubset& A, const FiniteSubset& B) {
  require_same_group(A, B);
  return FiniteSubset::from_rows(A.group(), merge_rows(A.rows(), B.rows(), A.rank(), MergeMode::difference));
}

FiniteSubset symmetric_difference(const FiniteSubset& A, const FiniteSubset& B) {
  require_same_group(A, B);
  return FiniteSubset::from_rows(A.group(), merge_rows(A.rows(), B.rows(), A.rank(), MergeMode::symmetric));
}

std::size_t symmetric_difference_size(const FiniteSubset& A, const FiniteSubset& B) {
  require_same_group(A, B);
  const std::size_t r = A.rank();
  const std::size_t na = A.size(), nb = B.size();
  std::size_t i = 0, j = 0, common = 0;
  while (i < na && j < nb) {
    const int c = compare_rows(A.rows().data() + i * r, B.rows().data() + j * r, r);
    if (c < 0) ++i;
    else if (c > 0) ++j;
    else {
      ++common;
      ++i;
      ++j;
    }
  }
  return na + nb - 2 * common;
}

bool is_subset(const FiniteSubset& A, const FiniteSubset& B) {
  require_same_group(A, B);
  return merge_rows(A.rows(), B.rows(), A.rank(), MergeMode::difference).empty();
}

FiniteSubset interval(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> rows;
  for (std::int64_t v = lo; v < hi; ++v) rows.push_back(v);
  return FiniteSubset::from_rows(GroupDescriptor::integers(), std::move(rows));
}

FiniteSubset coordinate_box(const GroupDescriptor& group, std::span<const std::int64_t> lo,
                            std::span<const std::int64_t> hi) {
  const std::size_t r = group.rank();
  if (lo.size() != r || hi.size() != r) throw DescriptorMismatch("box bounds must have one entry per coordinate");
  std::vector<std::int64_t> rows;
  for (std::size_t i = 0; i < r; ++i)
    if (hi[i] <= lo[i]) return FiniteSubset(group);
  std::size_t total = r;
  for (std::size_t i = 0; i < r; ++i) total *= static_cast<std::size_t>(hi[i] - lo[i]);
  rows.reserve(total);
  std::vector<std::int64_t> cur(lo.begin(), lo.end());
  // Odometer in lexicographic order, so the buffer is born sorted.
  while (true) {
    rows.insert(rows.end(), cur.begin(), cur.end());
    std::size_t k = r;
    while (k > 0) {
      --k;
      if (++cur[k] < hi[k]) break;
      cur[k] = lo[k];
      if (k == 0) return FiniteSubset::from_rows(group, std::move(rows));
    }
  }
}

FiniteSubset cartesian_product(const GroupDescriptor& product_group, std::span<const FiniteSubset> factors) {
  if (product_group.kind() != GroupKind::product || factors.size() != product_group.factors().size())
    throw DescriptorMismatch("cartesian product needs one set per factor of " + product_group.name());
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (!(factors[i].group() == product_group.factors()[i]))
      throw DescriptorMismatch("factor set " + std::to_string(i) + " is in the wrong group");
  std::vector<std::int64_t> rows;
  std::vector<std::size_t> idx(factors.size(), 0);
  for (const auto& f : factors)
    if (f.empty()) return FiniteSubset(product_group);
  while (true) {
    for (std::size_t i = 0; i < factors.size(); ++i) {
      auto row = factors[i].row(idx[i]);
      rows.insert(rows.end(), row.begin(), row.end());
    }
    std::size_t k = factors.size();
    while (k > 0) {
      --k;
      if (++idx[k] < factors[k].size()) break;
      idx[k] = 0;
      if (k == 0) return FiniteSubset::from_rows(product_group, std::move(rows));
    }
  }
}

}  // namespace folnerlab
