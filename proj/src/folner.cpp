#include "folnerlab/folner.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "folnerlab/error.hpp"
#include "spec_text.hpp"

namespace folnerlab {

std::string to_string(const Ratio& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string_view to_string(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::intervals: return "intervals";
    case FamilyTag::boxes: return "boxes";
    case FamilyTag::heisenberg_boxes: return "heisenberg-boxes";
    case FamilyTag::djr: return "djr";
    case FamilyTag::perturbed: return "perturbed";
    case FamilyTag::adversarial: return "adversarial";
    case FamilyTag::custom: return "custom";
    case FamilyTag::product: return "product";
  }
  return "unknown";
}

FolnerSequence::FolnerSequence(GroupDescriptor group, FamilyTag family, std::string label, Generator generator)
    : group_(std::move(group)), family_(family), label_(std::move(label)), generator_(std::move(generator)) {
  if (!generator_) throw ConfigError("Følner sequence needs a generator");
}

FiniteSubset FolnerSequence::at(std::size_t n) const {
  if (n < 1) throw ConfigError("Følner sequences are indexed from n = 1");
  FiniteSubset F = generator_(n);
  if (!(F.group() == group_))
    throw DescriptorMismatch("generator of '" + label_ + "' produced a set in " + F.group().name());
  if (F.empty()) throw EmptySetError("F_" + std::to_string(n) + " of '" + label_ + "' is empty");
  return F;
}

namespace families {

FolnerSequence intervals() {
  return FolnerSequence(GroupDescriptor::integers(), FamilyTag::intervals, "intervals",
                        [](std::size_t n) { return interval(0, static_cast<std::int64_t>(n)); });
}

FolnerSequence boxes(int d) {
  if (d == 1) {
    auto seq = intervals();
    return FolnerSequence(seq.group(), FamilyTag::boxes, "boxes:d=1", [seq](std::size_t n) { return seq.at(n); });
  }
  const auto group = GroupDescriptor::lattice(d);
  return FolnerSequence(group, FamilyTag::boxes, "boxes:d=" + std::to_string(d), [group, d](std::size_t n) {
    const std::vector<std::int64_t> lo(static_cast<std::size_t>(d), 0);
    const std::vector<std::int64_t> hi(static_cast<std::size_t>(d), static_cast<std::int64_t>(n));
    return coordinate_box(group, lo, hi);
  });
}

FolnerSequence heisenberg_boxes() {
  const auto group = GroupDescriptor::heisenberg();
  return FolnerSequence(group, FamilyTag::heisenberg_boxes, "h3boxes", [group](std::size_t n) {
    const auto m = static_cast<std::int64_t>(n);
    const std::int64_t lo[3] = {0, 0, 0};
    const std::int64_t hi[3] = {m, m, m * m};
    return coordinate_box(group, lo, hi);
  });
}

FolnerSequence djr() {
  return FolnerSequence(GroupDescriptor::integers(), FamilyTag::djr, "djr", [](std::size_t n) {
    const auto m = static_cast<std::int64_t>(n);
    return interval(m * m, m * m + m + 1);
  });
}

FolnerSequence product(std::vector<FolnerSequence> factors) {
  std::vector<GroupDescriptor> groups;
  std::string label = "product(";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    groups.push_back(factors[i].group());
    label += (i ? ";" : "") + factors[i].label();
  }
  label += ")";
  const auto group = GroupDescriptor::product(std::move(groups));
  return FolnerSequence(group, FamilyTag::product, label, [group, factors](std::size_t n) {
    std::vector<FiniteSubset> parts;
    for (const auto& f : factors) parts.push_back(f.at(n));
    return cartesian_product(group, parts);
  });
}

FolnerSequence constant(FiniteSubset F) {
  if (F.empty()) throw EmptySetError("constant Følner sequence needs a nonempty set");
  const auto group = F.group();
  return FolnerSequence(group, FamilyTag::custom, "constant", [F](std::size_t) { return F; });
}

FolnerSequence custom(GroupDescriptor group, std::string label, FolnerSequence::Generator generator) {
  return FolnerSequence(std::move(group), FamilyTag::custom, std::move(label), std::move(generator));
}

}  // namespace families

namespace {

void require_group(const GroupDescriptor& want, const GroupDescriptor& got, std::string_view family) {
  if (!(want == got))
    throw ConfigError("family '" + std::string(family) + "' lives in " + got.name() + ", not in " + want.name());
}

FolnerSequence::Generator named_perturbation(const std::string& name, const GroupDescriptor& group) {
  if (name == "empty") return [group](std::size_t) { return FiniteSubset(group); };
  if (name == "origin") {
    return [group](std::size_t) {
      const Element e = group.identity();
      return FiniteSubset(group, std::span<const Element>(&e, 1));
    };
  }
  if (name == "tail-sqrt") {
    if (!(group == GroupDescriptor::integers())) throw ConfigError("perturbation 'tail-sqrt' needs G = Z");
    return [](std::size_t n) {
      const auto m = static_cast<std::int64_t>(n);
      const auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
      return interval(2 * m, 2 * m + root + 1);
    };
  }
  throw ConfigError("unknown perturbation '" + name + "' (expected tail-sqrt, origin or empty)");
}

}  // namespace

FolnerSequence make_family(std::string_view spec_text, const GroupDescriptor& group) {
  const auto spec = detail::parse_spec(spec_text);
  if (spec.name == "intervals") {
    detail::expect_keys(spec, {});
    if (group.kind() == GroupKind::lattice && group.dimension() == 1) {
      return families::custom(group, "intervals", [group](std::size_t n) {
        const std::int64_t lo[1] = {0};
        const std::int64_t hi[1] = {static_cast<std::int64_t>(n)};
        return coordinate_box(group, lo, hi);
      });
    }
    auto seq = families::intervals();
    require_group(group, seq.group(), spec.text);
    return seq;
  }
  if (spec.name == "boxes") {
    detail::expect_keys(spec, {"d"});
    int d = 0;
    if (spec.params.count("d")) d = static_cast<int>(detail::get_int(spec, "d"));
    else if (group.kind() == GroupKind::lattice) d = group.dimension();
    else if (group.kind() == GroupKind::integers) d = 1;
    else throw ConfigError("boxes needs G = Z^d, got " + group.name());
    auto seq = families::boxes(d);
    require_group(group, seq.group(), spec.text);
    return seq;
  }
  if (spec.name == "h3boxes") {
    detail::expect_keys(spec, {});
    auto seq = families::heisenberg_boxes();
    require_group(group, seq.group(), spec.text);
    return seq;
  }
  if (spec.name == "djr") {
    detail::expect_keys(spec, {});
    auto seq = families::djr();
    require_group(group, seq.group(), spec.text);
    return seq;
  }
  if (spec.name == "perturb") {
    detail::expect_keys(spec, {"base", "d"});
    if (!spec.params.count("base") || !spec.params.count("d"))
      throw ConfigError("perturb needs base=<family> and d=<perturbation>");
    auto base = make_family(spec.params.at("base"), group);
    return perturb(base, named_perturbation(spec.params.at("d"), group), spec.params.at("d"));
  }
  if (spec.name == "product") {
    if (group.kind() != GroupKind::product || group.factors().size() != spec.args.size())
      throw ConfigError("family '" + spec.text + "' needs a direct product group with " +
                        std::to_string(spec.args.size()) + " factors, got " + group.name());
    std::vector<FolnerSequence> parts;
    for (std::size_t i = 0; i < spec.args.size(); ++i) parts.push_back(make_family(spec.args[i], group.factors()[i]));
    auto seq = families::product(std::move(parts));
    require_group(group, seq.group(), spec.text);
    return seq;
  }
  throw ConfigError("unknown Følner family '" + spec.text + "'");
}

Ratio boundary_ratio(const FiniteSubset& F, const Element& g) {
  if (F.empty()) throw EmptySetError("boundary ratio of an empty set");
  const auto diff = symmetric_difference_size(translate(g, F), F);
  return {static_cast<std::int64_t>(diff), static_cast<std::int64_t>(F.size())};
}

Ratio uniform_boundary_ratio(const FiniteSubset& F, const FiniteSubset& K) {
  if (F.empty() || K.empty()) throw EmptySetError("uniform boundary ratio needs nonempty F and K");
  const auto diff = symmetric_difference_size(product(K, F), F);
  return {static_cast<std::int64_t>(diff), static_cast<std::int64_t>(F.size())};
}

Ratio tempelman_ratio(const FiniteSubset& F) {
  if (F.empty()) throw EmptySetError("Tempelman ratio of an empty set");
  const auto size = product(inverse_set(F), F).size();
  return {static_cast<std::int64_t>(size), static_cast<std::int64_t>(F.size())};
}

ConditionRatios condition_ratios(const FolnerSequence& seq, std::size_t n, std::size_t budget) {
  if (n < 1) throw ConfigError("condition ratios are defined for n >= 1");
  const FiniteSubset Fn = seq.at(n);
  const auto card = static_cast<std::int64_t>(Fn.size());
  ConditionRatios out{tempelman_ratio(Fn), Ratio(0)};
  if (n == 1) return out;
  FiniteSubset acc(seq.group());
  for (std::size_t k = 1; k < n; ++k) {
    acc = set_union(acc, product(inverse_set(seq.at(k)), Fn, budget));
    if (acc.size() > budget)
      throw BudgetExceeded("Shulman union at n = " + std::to_string(n) + " exceeds the element budget of " +
                           std::to_string(budget));
  }
  out.shulman = Ratio(static_cast<std::int64_t>(acc.size()), card);
  return out;
}

SummingReport is_summing_prefix(const FolnerSequence& seq, std::size_t n, const FiniteSubset& probes) {
  if (n < 2) throw PreconditionError("summing-prefix check needs n >= 2");
  SummingReport report;
  FiniteSubset prev = seq.at(1);
  for (std::size_t k = 2; k <= n; ++k) {
    FiniteSubset cur = seq.at(k);
    if (report.nested && !is_subset(prev, cur)) report.nested = false;
    prev = std::move(cur);
  }
  report.max_uniform_ratio = Ratio(0);
  for (const auto& g : probes) report.max_uniform_ratio = std::max(report.max_uniform_ratio, boundary_ratio(prev, g));
  return report;
}

FolnerSequence perturb(const FolnerSequence& base, FolnerSequence::Generator perturbation,
                       std::string perturbation_label) {
  if (!perturbation) throw ConfigError("perturbation generator is empty");
  const std::string label = "perturb(base=" + base.label() + ",d=" + perturbation_label + ")";
  return FolnerSequence(base.group(), FamilyTag::perturbed, label, [base, perturbation, label](std::size_t n) {
    FiniteSubset C = symmetric_difference(base.at(n), perturbation(n));
    if (C.empty()) throw DegeneratePerturbation("C_" + std::to_string(n) + " of '" + label + "' is empty");
    return C;
  });
}

namespace {

struct OrbitSearch {
  ActionPtr action;
  Observable phi;
  Point x0;
  std::int64_t horizon;
  std::mutex mutex;
  std::unordered_map<std::size_t, std::int64_t> found;

  OrbitSearch(ActionPtr a, Observable p, Point x, std::int64_t h)
      : action(std::move(a)), phi(std::move(p)), x0(std::move(x)), horizon(h) {}

  std::int64_t index_for(std::size_t n) {
    {
      std::lock_guard<std::mutex> lock(mutex);
      if (auto it = found.find(n); it != found.end()) return it->second;
    }
    const double target = static_cast<double>(n) * static_cast<double>(n + 1);
    const auto& G = action->group();
    // An index qualifying for n also qualifies for n - 1, so i_n >= i_{n-1}.
    auto start = static_cast<std::int64_t>(n);
    {
      std::lock_guard<std::mutex> lock(mutex);
      if (auto it = found.find(n - 1); n > 1 && it != found.end()) start = std::max(start, it->second);
    }
    for (auto i = start; i < horizon; ++i) {
      const double v = phi(action->apply(G.element({i}), x0));
      if (v >= target) {
        std::lock_guard<std::mutex> lock(mutex);
        found[n] = i;
        return i;
      }
    }
    throw SearchExhausted("no orbit index in [" + std::to_string(n) + ", " + std::to_string(horizon) +
                          ") reaches phi >= " + std::to_string(target));
  }
};

}  // namespace

FolnerSequence adversarial_divergence_sequence(ActionPtr action, Observable phi, Point x0, std::int64_t horizon) {
  if (!action) throw ConfigError("adversarial sequence needs an action");
  if (!(action->group() == GroupDescriptor::integers()))
    throw PreconditionError("adversarial sequence needs a Z-action, got " + action->group().name());
  if (phi.bounded())
    throw PreconditionError("adversarial sequence needs an unbounded observable, '" + phi.label() + "' is bounded");
  if (horizon < 1) throw ConfigError("search horizon must be >= 1");
  action->check_point(x0);
  auto search = std::make_shared<OrbitSearch>(action, std::move(phi), std::move(x0), horizon);
  return FolnerSequence(GroupDescriptor::integers(), FamilyTag::adversarial, "adversarial", [search](std::size_t n) {
    const std::int64_t i = search->index_for(n);
    std::vector<std::int64_t> rows;
    rows.reserve(n + 1);
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k) rows.push_back(k);
    rows.push_back(i);
    return FiniteSubset::from_rows(GroupDescriptor::integers(), std::move(rows));
  });
}

}  // namespace folnerlab
