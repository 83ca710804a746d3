#include "folnerlab/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "folnerlab/error.hpp"

namespace folnerlab {

struct GroupDescriptor::Impl {
  GroupKind kind = GroupKind::integers;
  int dimension = 1;
  std::vector<GroupDescriptor> factors;
  std::vector<std::size_t> factor_offsets;
  std::vector<Segment> segments;
  std::size_t rank = 0;
  std::uint32_t tag = 0;
  std::string name;
};

namespace {

std::uint32_t fnv1a(std::string_view s) {
  std::uint32_t h = 2166136261u;
  for (unsigned char c : s) {
    h ^= c;
    h *= 16777619u;
  }
  return h;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string to_string(const Element& g) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < g.rank; ++i) {
    if (i) os << ',';
    os << g.coords[i];
  }
  os << ')';
  return os.str();
}

GroupDescriptor::GroupDescriptor(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

GroupDescriptor GroupDescriptor::integers() {
  auto impl = std::make_shared<Impl>();
  impl->kind = GroupKind::integers;
  impl->dimension = 1;
  impl->rank = 1;
  impl->segments = {{GroupKind::integers, 0, 1}};
  impl->name = "Z";
  impl->tag = fnv1a(impl->name);
  return GroupDescriptor(std::move(impl));
}

GroupDescriptor GroupDescriptor::lattice(int d) {
  if (d < 1) throw ConfigError("integer lattice needs dimension >= 1");
  if (static_cast<std::size_t>(d) > kMaxRank)
    throw ConfigError("integer lattice dimension exceeds " + std::to_string(kMaxRank));
  auto impl = std::make_shared<Impl>();
  impl->kind = GroupKind::lattice;
  impl->dimension = d;
  impl->rank = static_cast<std::size_t>(d);
  impl->segments = {{GroupKind::lattice, 0, impl->rank}};
  impl->name = "Z^" + std::to_string(d);
  impl->tag = fnv1a(impl->name);
  return GroupDescriptor(std::move(impl));
}

GroupDescriptor GroupDescriptor::heisenberg() {
  auto impl = std::make_shared<Impl>();
  impl->kind = GroupKind::heisenberg;
  impl->dimension = 3;
  impl->rank = 3;
  impl->segments = {{GroupKind::heisenberg, 0, 3}};
  impl->name = "H3";
  impl->tag = fnv1a(impl->name);
  return GroupDescriptor(std::move(impl));
}

GroupDescriptor GroupDescriptor::product(std::vector<GroupDescriptor> factors) {
  if (factors.size() < 2) throw ConfigError("direct product needs at least two factors");
  auto impl = std::make_shared<Impl>();
  impl->kind = GroupKind::product;
  impl->dimension = 0;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    impl->factor_offsets.push_back(offset);
    for (const auto& seg : f.segments())
      impl->segments.push_back({seg.kind, offset + seg.offset, seg.length});
    offset += f.rank();
    if (i) impl->name += " x ";
    impl->name += f.kind() == GroupKind::product ? "(" + f.name() + ")" : f.name();
  }
  if (offset > kMaxRank)
    throw ConfigError("direct product has more than " + std::to_string(kMaxRank) + " coordinates");
  impl->rank = offset;
  impl->factors = std::move(factors);
  impl->tag = fnv1a(impl->name);
  return GroupDescriptor(std::move(impl));
}

GroupDescriptor GroupDescriptor::parse(std::string_view text) {
  std::vector<GroupDescriptor> parts;
  std::string_view rest = text;
  while (true) {
    auto pos = rest.find(" x ");
    std::string_view token = trim(rest.substr(0, pos));
    if (token == "Z") {
      parts.push_back(integers());
    } else if (token == "H3" || token == "H") {
      parts.push_back(heisenberg());
    } else if (token.size() > 2 && token.substr(0, 2) == "Z^") {
      int d = 0;
      auto digits = token.substr(2);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
      if (ec != std::errc() || ptr != digits.data() + digits.size())
        throw ConfigError("bad lattice dimension in group '" + std::string(text) + "'");
      parts.push_back(lattice(d));
    } else {
      throw ConfigError("unknown group '" + std::string(token) + "' in '" + std::string(text) + "'");
    }
    if (pos == std::string_view::npos) break;
    rest = rest.substr(pos + 3);
  }
  if (parts.size() == 1) return parts.front();
  return product(std::move(parts));
}

GroupKind GroupDescriptor::kind() const { return impl_->kind; }
int GroupDescriptor::dimension() const { return impl_->dimension; }
const std::vector<GroupDescriptor>& GroupDescriptor::factors() const { return impl_->factors; }
std::size_t GroupDescriptor::rank() const { return impl_->rank; }
std::uint32_t GroupDescriptor::tag() const { return impl_->tag; }
const std::string& GroupDescriptor::name() const { return impl_->name; }
const std::vector<GroupDescriptor::Segment>& GroupDescriptor::segments() const {
  return impl_->segments;
}

bool GroupDescriptor::is_abelian() const {
  return std::none_of(impl_->segments.begin(), impl_->segments.end(),
                      [](const Segment& s) { return s.kind == GroupKind::heisenberg; });
}

bool GroupDescriptor::is_z_module() const { return is_abelian(); }

void GroupDescriptor::check(const Element& g) const {
  if (g.tag != impl_->tag || g.rank != impl_->rank)
    throw DescriptorMismatch("element " + to_string(g) + " does not belong to group " + impl_->name);
}

Element GroupDescriptor::identity() const {
  Element e;
  e.rank = static_cast<std::uint8_t>(impl_->rank);
  e.tag = impl_->tag;
  return e;
}

Element GroupDescriptor::element(std::initializer_list<std::int64_t> coords) const {
  return element(std::span<const std::int64_t>(coords.begin(), coords.size()));
}

Element GroupDescriptor::element(std::span<const std::int64_t> coords) const {
  if (coords.size() != impl_->rank)
    throw DescriptorMismatch("group " + impl_->name + " expects " + std::to_string(impl_->rank) +
                             " coordinates, got " + std::to_string(coords.size()));
  Element e = identity();
  std::copy(coords.begin(), coords.end(), e.coords.begin());
  return e;
}

Element GroupDescriptor::multiply(const Element& g, const Element& h) const {
  check(g);
  check(h);
  Element r = identity();
  for (const auto& seg : impl_->segments) {
    const std::size_t o = seg.offset;
    if (seg.kind == GroupKind::heisenberg) {
      r.coords[o] = g.coords[o] + h.coords[o];
      r.coords[o + 1] = g.coords[o + 1] + h.coords[o + 1];
      r.coords[o + 2] = g.coords[o + 2] + h.coords[o + 2] + g.coords[o] * h.coords[o + 1];
    } else {
      for (std::size_t i = o; i < o + seg.length; ++i) r.coords[i] = g.coords[i] + h.coords[i];
    }
  }
  return r;
}

Element GroupDescriptor::inverse(const Element& g) const {
  check(g);
  Element r = identity();
  for (const auto& seg : impl_->segments) {
    const std::size_t o = seg.offset;
    if (seg.kind == GroupKind::heisenberg) {
      r.coords[o] = -g.coords[o];
      r.coords[o + 1] = -g.coords[o + 1];
      r.coords[o + 2] = g.coords[o] * g.coords[o + 1] - g.coords[o + 2];
    } else {
      for (std::size_t i = o; i < o + seg.length; ++i) r.coords[i] = -g.coords[i];
    }
  }
  return r;
}

Element GroupDescriptor::scalar_multiple(std::int64_t t, const Element& g) const {
  check(g);
  if (!is_z_module()) throw ConfigError("scalar multiples need a free abelian group, got " + impl_->name);
  Element r = g;
  for (std::size_t i = 0; i < impl_->rank; ++i) r.coords[i] = t * g.coords[i];
  return r;
}

std::vector<Element> GroupDescriptor::generators() const {
  std::vector<Element> gens;
  for (const auto& seg : impl_->segments) {
    const std::size_t count = seg.kind == GroupKind::heisenberg ? 2 : seg.length;
    for (std::size_t i = 0; i < count; ++i) {
      Element e = identity();
      e.coords[seg.offset + i] = 1;
      gens.push_back(e);
    }
  }
  return gens;
}

Element GroupDescriptor::factor_element(const Element& g, std::size_t i) const {
  check(g);
  if (impl_->kind != GroupKind::product) {
    if (i != 0) throw ConfigError("factor index out of range for " + impl_->name);
    return g;
  }
  if (i >= impl_->factors.size()) throw ConfigError("factor index out of range for " + impl_->name);
  const auto& f = impl_->factors[i];
  const auto offset = impl_->factor_offsets[i];
  return f.element(std::span<const std::int64_t>(g.coords.data() + offset, f.rank()));
}

Element GroupDescriptor::join(std::span<const Element> parts) const {
  if (impl_->kind != GroupKind::product) {
    if (parts.size() != 1) throw DescriptorMismatch("join expects one part for " + impl_->name);
    check(parts[0]);
    return parts[0];
  }
  if (parts.size() != impl_->factors.size())
    throw DescriptorMismatch("join expects " + std::to_string(impl_->factors.size()) + " parts");
  Element r = identity();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    impl_->factors[i].check(parts[i]);
    std::copy_n(parts[i].coords.begin(), parts[i].rank,
                r.coords.begin() + static_cast<std::ptrdiff_t>(impl_->factor_offsets[i]));
  }
  return r;
}

}  // namespace folnerlab
