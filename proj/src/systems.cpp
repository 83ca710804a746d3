#include "folnerlab/systems.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "folnerlab/error.hpp"
#include "spec_text.hpp"

namespace folnerlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::int64_t integer_coordinate(const Element& g) { return g.coords[0]; }

}  // namespace

// ---------------------------------------------------------------------------
// Point helpers

std::string to_string(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, CirclePoint>) {
          os << v.x;
        } else if constexpr (std::is_same_v<T, TorusPoint>) {
          os << '[';
          for (std::size_t i = 0; i < v.x.size(); ++i) os << (i ? "," : "") << v.x[i];
          os << ']';
        } else if constexpr (std::is_same_v<T, ShiftPoint>) {
          os << "shift(seed=" << v.seed << ",t=" << to_string(v.translate) << ')';
        } else if constexpr (std::is_same_v<T, TwoCirclePoint>) {
          os << '(' << v.component << ',' << v.x << ')';
        } else if constexpr (std::is_same_v<T, LinePoint>) {
          os << v.site;
        } else {
          os << '<';
          for (std::size_t i = 0; i < v.parts.size(); ++i) os << (i ? ";" : "") << to_string(v.parts[i]);
          os << '>';
        }
      },
      p.value);
  return os.str();
}

bool points_close(const Point& a, const Point& b, double tol) {
  if (a.value.index() != b.value.index()) return false;
  return std::visit(
      [&](const auto& va) -> bool {
        using T = std::decay_t<decltype(va)>;
        const auto& vb = std::get<T>(b.value);
        if constexpr (std::is_same_v<T, CirclePoint>) {
          return circle_distance(va.x, vb.x) <= tol;
        } else if constexpr (std::is_same_v<T, TorusPoint>) {
          if (va.x.size() != vb.x.size()) return false;
          for (std::size_t i = 0; i < va.x.size(); ++i)
            if (circle_distance(va.x[i], vb.x[i]) > tol) return false;
          return true;
        } else if constexpr (std::is_same_v<T, ShiftPoint>) {
          return va.seed == vb.seed && va.translate == vb.translate;
        } else if constexpr (std::is_same_v<T, TwoCirclePoint>) {
          return va.component == vb.component && circle_distance(va.x, vb.x) <= tol;
        } else if constexpr (std::is_same_v<T, LinePoint>) {
          return va.site == vb.site;
        } else {
          if (va.parts.size() != vb.parts.size()) return false;
          for (std::size_t i = 0; i < va.parts.size(); ++i)
            if (!points_close(va.parts[i], vb.parts[i], tol)) return false;
          return true;
        }
      },
      a.value);
}

namespace {

// Returns true and sets `out` when coordinate i lies in p; otherwise
// decrements i by the number of real coordinates p carries.
bool find_real(const Point& p, std::size_t& i, double& out) {
  if (const auto* c = std::get_if<CirclePoint>(&p.value)) {
    if (i == 0) { out = c->x; return true; }
    i -= 1;
  } else if (const auto* t = std::get_if<TorusPoint>(&p.value)) {
    if (i < t->x.size()) { out = t->x[i]; return true; }
    i -= t->x.size();
  } else if (const auto* tc = std::get_if<TwoCirclePoint>(&p.value)) {
    if (i == 0) { out = tc->x; return true; }
    i -= 1;
  } else if (const auto* pp = std::get_if<ProductPoint>(&p.value)) {
    for (const auto& part : pp->parts)
      if (find_real(part, i, out)) return true;
  }
  return false;
}

}  // namespace

double real_coordinate(const Point& p, std::size_t i) {
  double out = 0.0;
  std::size_t k = i;
  if (!find_real(p, k, out))
    throw ConfigError("point " + to_string(p) + " has no real coordinate " + std::to_string(i));
  return out;
}

double wrap_unit(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  return r;
}

double rotate(double x, std::int64_t t, double alpha) {
  const double td = static_cast<double>(t);
  const double p = td * alpha;
  const double err = std::fma(td, alpha, -p);
  return wrap_unit((p - std::floor(p)) + err + x);
}

double circle_distance(double x, double y) {
  const double d = std::fabs(wrap_unit(x) - wrap_unit(y));
  return std::min(d, 1.0 - d);
}

int shift_bit(std::uint64_t seed, const Element& h) {
  std::uint64_t s = splitmix64(seed ^ 0xA0761D6478BD642Full);
  s = splitmix64(s ^ h.rank);
  for (std::size_t i = 0; i < h.rank; ++i) s = splitmix64(s ^ static_cast<std::uint64_t>(h.coords[i]));
  return static_cast<int>(s >> 63);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

std::optional<double> Action::distance(const Point&, const Point&) const { return std::nullopt; }

// ---------------------------------------------------------------------------
// Rotation

RotationAction::RotationAction(double alpha) : Action(GroupDescriptor::integers()), alpha_(alpha) {
  if (!std::isfinite(alpha)) throw ConfigError("rotation number must be finite");
}

Point RotationAction::apply(const Element& g, const Point& x) const {
  group().check(g);
  const auto* c = std::get_if<CirclePoint>(&x.value);
  if (!c) throw ConfigError("rotation acts on circle points, got " + to_string(x));
  return CirclePoint{rotate(c->x, integer_coordinate(g), alpha_)};
}

std::string RotationAction::describe() const {
  std::ostringstream os;
  os << "rotation:alpha=" << detail::format_double(alpha_);
  return os.str();
}

std::optional<double> RotationAction::distance(const Point& x, const Point& y) const {
  return circle_distance(x.as<CirclePoint>().x, y.as<CirclePoint>().x);
}

Point RotationAction::sample_point(Rng& rng) const { return CirclePoint{rng.uniform()}; }

void RotationAction::check_point(const Point& x) const {
  if (!x.is<CirclePoint>()) throw ConfigError("rotation expects a circle point");
}

// ---------------------------------------------------------------------------
// Torus

TorusAction::TorusAction(GroupDescriptor group, std::vector<std::vector<double>> rotation_vectors)
    : Action(std::move(group)), dim_(0), alphas_(std::move(rotation_vectors)) {
  if (!this->group().is_z_module()) throw ConfigError("torus rotations need a group Z^m");
  if (alphas_.size() != this->group().rank())
    throw ConfigError("torus needs one rotation vector per group coordinate");
  dim_ = alphas_.front().size();
  if (dim_ == 0) throw ConfigError("torus dimension must be >= 1");
  for (const auto& a : alphas_) {
    if (a.size() != dim_) throw ConfigError("torus rotation vectors must share a dimension");
    for (double v : a)
      if (!std::isfinite(v)) throw ConfigError("rotation numbers must be finite");
  }
}

Point TorusAction::apply(const Element& g, const Point& x) const {
  group().check(g);
  const auto* t = std::get_if<TorusPoint>(&x.value);
  if (!t || t->x.size() != dim_) throw ConfigError("torus action got point " + to_string(x));
  TorusPoint out = *t;
  for (std::size_t j = 0; j < alphas_.size(); ++j) {
    if (g.coords[j] == 0) continue;
    for (std::size_t i = 0; i < dim_; ++i) out.x[i] = rotate(out.x[i], g.coords[j], alphas_[j][i]);
  }
  return out;
}

std::string TorusAction::describe() const {
  std::ostringstream os;
  os << "torus:G=" << group().name() << ",alpha=";
  for (std::size_t j = 0; j < alphas_.size(); ++j) {
    os << (j ? ";" : "") << '[';
    for (std::size_t i = 0; i < dim_; ++i) os << (i ? "," : "") << detail::format_double(alphas_[j][i]);
    os << ']';
  }
  return os.str();
}

std::optional<double> TorusAction::distance(const Point& x, const Point& y) const {
  const auto& a = x.as<TorusPoint>().x;
  const auto& b = y.as<TorusPoint>().x;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, circle_distance(a[i], b[i]));
  return d;
}

Point TorusAction::sample_point(Rng& rng) const {
  TorusPoint p;
  p.x.resize(dim_);
  for (auto& v : p.x) v = rng.uniform();
  return p;
}

Point TorusAction::default_point() const { return TorusPoint{std::vector<double>(dim_, 0.0)}; }

void TorusAction::check_point(const Point& x) const {
  if (!x.is<TorusPoint>() || x.as<TorusPoint>().x.size() != dim_)
    throw ConfigError("torus expects a point with " + std::to_string(dim_) + " coordinates");
}

// ---------------------------------------------------------------------------
// Bernoulli shift

ShiftAction::ShiftAction(GroupDescriptor group, std::uint64_t seed, int metric_radius)
    : Action(std::move(group)), seed_(seed), k_max_(metric_radius) {
  if (metric_radius < 0) throw ConfigError("shift metric radius must be >= 0");
}

Point ShiftAction::apply(const Element& g, const Point& x) const {
  const auto* s = std::get_if<ShiftPoint>(&x.value);
  if (!s) throw ConfigError("shift acts on shift points, got " + to_string(x));
  return ShiftPoint{s->seed, group().multiply(g, s->translate)};
}

std::string ShiftAction::describe() const {
  return "shift:G=" + group().name() + ",seed=" + std::to_string(seed_);
}

int ShiftAction::coordinate(const Point& x, const Element& h) const {
  const auto& s = x.as<ShiftPoint>();
  return shift_bit(s.seed, group().multiply(h, s.translate));
}

std::optional<double> ShiftAction::distance(const Point& x, const Point& y) const {
  const std::size_t r = group().rank();
  for (int k = 0; k <= k_max_; ++k) {
    // Walk the box [-k, k]^r and test only its boundary shell.
    std::vector<std::int64_t> cur(r, -k);
    while (true) {
      bool on_shell = k == 0;
      for (auto c : cur)
        if (c == k || c == -k) on_shell = true;
      if (on_shell) {
        const Element h = group().element(cur);
        if (coordinate(x, h) != coordinate(y, h)) return std::ldexp(1.0, -k);
      }
      std::size_t i = r;
      bool done = true;
      while (i > 0) {
        --i;
        if (++cur[i] <= k) { done = false; break; }
        cur[i] = -k;
      }
      if (done) break;
    }
  }
  return 0.0;
}

Point ShiftAction::sample_point(Rng& rng) const { return ShiftPoint{rng.next(), group().identity()}; }

Point ShiftAction::default_point() const { return ShiftPoint{seed_, group().identity()}; }

void ShiftAction::check_point(const Point& x) const {
  if (!x.is<ShiftPoint>()) throw ConfigError("shift expects a shift point");
  group().check(x.as<ShiftPoint>().translate);
}

// ---------------------------------------------------------------------------
// Two circles

TwoCircleAction::TwoCircleAction(double alpha0, double alpha1)
    : Action(GroupDescriptor::integers()), alpha0_(alpha0), alpha1_(alpha1) {
  if (!std::isfinite(alpha0) || !std::isfinite(alpha1)) throw ConfigError("rotation numbers must be finite");
}

Point TwoCircleAction::apply(const Element& g, const Point& x) const {
  group().check(g);
  const auto* p = std::get_if<TwoCirclePoint>(&x.value);
  if (!p) throw ConfigError("two-circle acts on two-circle points, got " + to_string(x));
  return TwoCirclePoint{p->component, rotate(p->x, integer_coordinate(g), alpha(p->component))};
}

std::string TwoCircleAction::describe() const {
  std::ostringstream os;
  os << "twocircle:a0=" << detail::format_double(alpha0_) << ",a1=" << detail::format_double(alpha1_);
  return os.str();
}

std::optional<double> TwoCircleAction::distance(const Point& x, const Point& y) const {
  const auto& a = x.as<TwoCirclePoint>();
  const auto& b = y.as<TwoCirclePoint>();
  if (a.component != b.component) return 1.0;
  return circle_distance(a.x, b.x);
}

Point TwoCircleAction::sample_point(Rng& rng) const {
  const int component = rng.uniform() < 0.5 ? 0 : 1;
  return TwoCirclePoint{component, rng.uniform()};
}

void TwoCircleAction::check_point(const Point& x) const {
  if (!x.is<TwoCirclePoint>()) throw ConfigError("two-circle expects a (component, x) point");
  const int c = x.as<TwoCirclePoint>().component;
  if (c != 0 && c != 1) throw ConfigError("two-circle component must be 0 or 1");
}

// ---------------------------------------------------------------------------
// Translation line

TranslationLineAction::TranslationLineAction() : Action(GroupDescriptor::integers()) {}

Point TranslationLineAction::apply(const Element& g, const Point& x) const {
  group().check(g);
  const auto* p = std::get_if<LinePoint>(&x.value);
  if (!p) throw ConfigError("line acts on integer sites, got " + to_string(x));
  return LinePoint{p->site + integer_coordinate(g)};
}

std::optional<double> TranslationLineAction::distance(const Point& x, const Point& y) const {
  return static_cast<double>(std::llabs(x.as<LinePoint>().site - y.as<LinePoint>().site));
}

Point TranslationLineAction::sample_point(Rng&) const {
  throw PreconditionError("the translation line carries no invariant probability measure");
}

void TranslationLineAction::check_point(const Point& x) const {
  if (!x.is<LinePoint>()) throw ConfigError("line expects an integer site");
}

// ---------------------------------------------------------------------------
// Products

namespace {

GroupDescriptor product_group(const std::vector<ActionPtr>& factors) {
  if (factors.size() < 2) throw ConfigError("product system needs at least two factors");
  std::vector<GroupDescriptor> groups;
  for (const auto& f : factors) groups.push_back(f->group());
  return GroupDescriptor::product(std::move(groups));
}

}  // namespace

ProductAction::ProductAction(std::vector<ActionPtr> factors)
    : Action(product_group(factors)), factors_(std::move(factors)) {}

Point ProductAction::apply(const Element& g, const Point& x) const {
  const auto* p = std::get_if<ProductPoint>(&x.value);
  if (!p || p->parts.size() != factors_.size())
    throw ConfigError("product action got point " + to_string(x));
  ProductPoint out;
  out.parts.reserve(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i)
    out.parts.push_back(factors_[i]->apply(group().factor_element(g, i), p->parts[i]));
  return out;
}

std::string ProductAction::describe() const {
  std::string s = "product(";
  for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? ";" : "") + factors_[i]->describe();
  return s + ")";
}

std::optional<double> ProductAction::distance(const Point& x, const Point& y) const {
  const auto& a = x.as<ProductPoint>();
  const auto& b = y.as<ProductPoint>();
  double d = 0.0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    auto di = factors_[i]->distance(a.parts[i], b.parts[i]);
    if (!di) return std::nullopt;
    d = std::max(d, *di);
  }
  return d;
}

std::optional<double> ProductAction::diameter() const {
  double d = 0.0;
  for (const auto& f : factors_) {
    auto di = f->diameter();
    if (!di) return std::nullopt;
    d = std::max(d, *di);
  }
  return d;
}

bool ProductAction::compact() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const ActionPtr& f) { return f->compact(); });
}

Point ProductAction::sample_point(Rng& rng) const {
  ProductPoint p;
  for (const auto& f : factors_) p.parts.push_back(f->sample_point(rng));
  return p;
}

Point ProductAction::default_point() const {
  ProductPoint p;
  for (const auto& f : factors_) p.parts.push_back(f->default_point());
  return p;
}

void ProductAction::check_point(const Point& x) const {
  if (!x.is<ProductPoint>() || x.as<ProductPoint>().parts.size() != factors_.size())
    throw ConfigError("product system expects a tuple of " + std::to_string(factors_.size()) + " points");
  for (std::size_t i = 0; i < factors_.size(); ++i) factors_[i]->check_point(x.as<ProductPoint>().parts[i]);
}

// ---------------------------------------------------------------------------
// Parsing

ActionPtr parse_action(std::string_view spec) {
  const auto parsed = detail::parse_spec(spec);
  const auto& name = parsed.name;
  if (name == "rotation") {
    detail::expect_keys(parsed, {"alpha"});
    return std::make_shared<RotationAction>(detail::get_double(parsed, "alpha"));
  }
  if (name == "torus") {
    detail::expect_keys(parsed, {"alpha", "G"});
    const auto alpha = detail::get_double_list(parsed, "alpha");
    if (alpha.empty()) throw ConfigError("torus needs a nonempty alpha vector");
    const auto group = parsed.params.count("G") ? GroupDescriptor::parse(parsed.params.at("G"))
                                                : GroupDescriptor::integers();
    std::vector<std::vector<double>> vectors;
    if (group.rank() == 1) {
      vectors.push_back(alpha);
    } else {
      if (group.rank() != alpha.size())
        throw ConfigError("torus with G=" + group.name() + " needs " + std::to_string(group.rank()) +
                          " rotation numbers");
      for (std::size_t j = 0; j < alpha.size(); ++j) {
        std::vector<double> v(alpha.size(), 0.0);
        v[j] = alpha[j];
        vectors.push_back(std::move(v));
      }
    }
    return std::make_shared<TorusAction>(group, std::move(vectors));
  }
  if (name == "shift") {
    detail::expect_keys(parsed, {"G", "seed", "kmax"});
    const auto group = parsed.params.count("G") ? GroupDescriptor::parse(parsed.params.at("G"))
                                                : GroupDescriptor::integers();
    const auto seed = parsed.params.count("seed") ? detail::get_u64(parsed, "seed") : std::uint64_t{0};
    const int kmax = parsed.params.count("kmax") ? static_cast<int>(detail::get_int(parsed, "kmax")) : 20;
    return std::make_shared<ShiftAction>(group, seed, kmax);
  }
  if (name == "twocircle") {
    detail::expect_keys(parsed, {"a0", "a1"});
    return std::make_shared<TwoCircleAction>(detail::get_double(parsed, "a0"), detail::get_double(parsed, "a1"));
  }
  if (name == "line") {
    detail::expect_keys(parsed, {});
    return std::make_shared<TranslationLineAction>();
  }
  if (name == "product") {
    std::vector<ActionPtr> factors;
    for (const auto& arg : parsed.args) factors.push_back(parse_action(arg));
    return std::make_shared<ProductAction>(std::move(factors));
  }
  throw ConfigError("unknown system '" + std::string(spec) + "'");
}

std::vector<Point> MeasureSampler::sample(std::size_t count, std::uint64_t seed, std::uint64_t stream) const {
  Rng rng(seed, stream);
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(action_->sample_point(rng));
  return out;
}

}  // namespace folnerlab
