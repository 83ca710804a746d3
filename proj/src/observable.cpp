#include "folnerlab/observable.hpp"

#include <cmath>
#include <numbers>

#include "folnerlab/error.hpp"
#include "spec_text.hpp"

namespace folnerlab {

Observable::Observable(Evaluator eval, std::optional<double> sup_bound, std::string label, ObservableKind kind,
                       ObservableParams params)
    : eval_(std::move(eval)), sup_bound_(sup_bound), label_(std::move(label)), kind_(kind), params_(params) {
  if (sup_bound_ && !(*sup_bound_ >= 0.0 && std::isfinite(*sup_bound_)))
    throw ConfigError("sup bound of '" + label_ + "' must be finite and nonnegative");
}

double Observable::sup_bound() const {
  if (!sup_bound_) throw PreconditionError("observable '" + label_ + "' is unbounded");
  return *sup_bound_;
}

Observable Observable::with_indicator(bool v) const {
  Observable o = *this;
  o.indicator_ = v;
  return o;
}

Observable Observable::with_support_radius(std::int64_t r) const {
  if (r < 0) throw ConfigError("support radius must be >= 0");
  Observable o = *this;
  o.support_radius_ = r;
  return o;
}

namespace observables {

namespace {

std::string fmt_double(double v) { return detail::format_double(v); }

std::string coord_suffix(std::size_t coordinate) {
  return coordinate == 0 ? "" : ",coord=" + std::to_string(coordinate);
}

const ShiftPoint& find_shift(const Point& x) {
  if (const auto* s = std::get_if<ShiftPoint>(&x.value)) return *s;
  if (const auto* p = std::get_if<ProductPoint>(&x.value))
    for (const auto& part : p->parts)
      if (part.is<ShiftPoint>() || part.is<ProductPoint>()) return find_shift(part);
  throw ConfigError("cylinder observable needs a shift point, got " + to_string(x));
}

}  // namespace

Observable constant(double c) {
  if (!std::isfinite(c)) throw ConfigError("constant must be finite");
  ObservableParams p;
  p.value = c;
  Observable o([c](const Point&) { return c; }, std::fabs(c), "const:c=" + fmt_double(c),
               ObservableKind::constant, p);
  o = o.with_indicator(c == 0.0 || c == 1.0);
  return c == 0.0 ? o.with_support_radius(0) : o;
}

Observable cosine(int k, std::size_t coordinate) {
  ObservableParams p;
  p.frequency = k;
  p.coordinate = coordinate;
  return Observable(
      [k, coordinate](const Point& x) {
        // Reduce k*x mod 1 before scaling so large frequencies stay accurate.
        const double t = wrap_unit(static_cast<double>(k) * real_coordinate(x, coordinate));
        return std::cos(2.0 * std::numbers::pi * t);
      },
      1.0, "cos:k=" + std::to_string(k) + coord_suffix(coordinate), ObservableKind::cosine, p);
}

Observable sine(int k, std::size_t coordinate) {
  ObservableParams p;
  p.frequency = k;
  p.coordinate = coordinate;
  return Observable(
      [k, coordinate](const Point& x) {
        const double t = wrap_unit(static_cast<double>(k) * real_coordinate(x, coordinate));
        return std::sin(2.0 * std::numbers::pi * t);
      },
      1.0, "sin:k=" + std::to_string(k) + coord_suffix(coordinate), ObservableKind::sine, p);
}

Observable arc(double a, std::size_t coordinate) {
  if (!(a > 0.0 && a < 1.0)) throw ConfigError("arc length must lie in (0, 1), got " + fmt_double(a));
  ObservableParams p;
  p.value = a;
  p.coordinate = coordinate;
  Observable o([a, coordinate](const Point& x) { return real_coordinate(x, coordinate) < a ? 1.0 : 0.0; }, 1.0,
               "arc:a=" + fmt_double(a) + coord_suffix(coordinate), ObservableKind::arc, p);
  return o.with_indicator(true);
}

Observable cylinder(ActionPtr shift) {
  if (!shift) throw ConfigError("cylinder observable needs a system");
  const Action* root = shift.get();
  // Descend into products to the first shift factor.
  while (const auto* prod = dynamic_cast<const ProductAction*>(root)) {
    const Action* next = nullptr;
    for (const auto& f : prod->factors())
      if (f->phase_space() == PhaseSpace::shift || f->phase_space() == PhaseSpace::product) {
        next = f.get();
        break;
      }
    if (!next) break;
    root = next;
  }
  if (!dynamic_cast<const ShiftAction*>(root)) throw ConfigError("cylinder observable needs a shift system");
  Observable o(
      [](const Point& x) {
        const auto& s = find_shift(x);
        return static_cast<double>(shift_bit(s.seed, s.translate));
      },
      1.0, "cylinder", ObservableKind::cylinder);
  return o.with_indicator(true);
}

Observable component(int j) {
  if (j != 0 && j != 1) throw ConfigError("component index must be 0 or 1");
  ObservableParams p;
  p.component = j;
  Observable o(
      [j](const Point& x) {
        const auto* tc = std::get_if<TwoCirclePoint>(&x.value);
        if (!tc) throw ConfigError("component indicator needs a two-circle point, got " + to_string(x));
        return tc->component == j ? 1.0 : 0.0;
      },
      1.0, "component:j=" + std::to_string(j), ObservableKind::component, p);
  return o.with_indicator(true);
}

Observable inverse_sqrt() {
  return Observable([](const Point& x) { return 1.0 / std::sqrt(real_coordinate(x, 0)); }, std::nullopt, "invsqrt",
                    ObservableKind::inverse_sqrt);
}

Observable tent(std::int64_t half_width) {
  if (half_width < 0) throw ConfigError("tent half-width must be >= 0");
  ObservableParams p;
  p.width = half_width;
  const double scale = static_cast<double>(half_width + 1);
  Observable o(
      [half_width, scale](const Point& x) {
        const auto* lp = std::get_if<LinePoint>(&x.value);
        if (!lp) throw ConfigError("tent observable needs a line point, got " + to_string(x));
        const std::int64_t d = std::llabs(lp->site);
        if (d > half_width) return 0.0;
        return 1.0 - static_cast<double>(d) / scale;
      },
      1.0, "tent:w=" + std::to_string(half_width), ObservableKind::tent, p);
  return o.with_support_radius(half_width);
}

Observable site(std::int64_t s) {
  ObservableParams p;
  p.width = s;
  Observable o(
      [s](const Point& x) {
        const auto* lp = std::get_if<LinePoint>(&x.value);
        if (!lp) throw ConfigError("site indicator needs a line point, got " + to_string(x));
        return lp->site == s ? 1.0 : 0.0;
      },
      1.0, "site:s=" + std::to_string(s), ObservableKind::site, p);
  return o.with_indicator(true).with_support_radius(std::llabs(s));
}

namespace {

std::optional<double> combine_bounds(std::optional<double> a, std::optional<double> b, bool multiply) {
  if (!a || !b) return std::nullopt;
  return multiply ? *a * *b : *a + *b;
}

std::optional<std::int64_t> combine_support(const Observable& a, const Observable& b, bool multiply) {
  auto ra = a.support_radius(), rb = b.support_radius();
  if (multiply) {
    if (ra && rb) return std::min(*ra, *rb);
    return ra ? ra : rb;
  }
  if (ra && rb) return std::max(*ra, *rb);
  return std::nullopt;
}

}  // namespace

Observable sum(const Observable& a, const Observable& b) {
  Observable o([a, b](const Point& x) { return a(x) + b(x); },
               combine_bounds(a.maybe_sup_bound(), b.maybe_sup_bound(), false), a.label() + " + " + b.label());
  if (auto r = combine_support(a, b, false)) o = o.with_support_radius(*r);
  return o;
}

Observable scale(double c, const Observable& a) {
  if (!std::isfinite(c)) throw ConfigError("scale factor must be finite");
  std::optional<double> bound;
  if (a.bounded()) bound = std::fabs(c) * a.sup_bound();
  Observable o([c, a](const Point& x) { return c * a(x); }, bound, fmt_double(c) + " * " + a.label());
  if (auto r = a.support_radius()) o = o.with_support_radius(*r);
  return o;
}

Observable product(const Observable& a, const Observable& b) {
  Observable o([a, b](const Point& x) { return a(x) * b(x); },
               combine_bounds(a.maybe_sup_bound(), b.maybe_sup_bound(), true), a.label() + " * " + b.label());
  if (auto r = combine_support(a, b, true)) o = o.with_support_radius(*r);
  return o.with_indicator(a.is_indicator() && b.is_indicator());
}

Observable compose(const Observable& phi, ActionPtr action, const Element& h) {
  action->group().check(h);
  Observable o([phi, action, h](const Point& x) { return phi(action->apply(h, x)); }, phi.maybe_sup_bound(),
               phi.label() + " o T" + to_string(h));
  return o.with_indicator(phi.is_indicator());
}

namespace {

Observable parse_term(const std::string& text, const ActionPtr& action) {
  const auto spec = detail::parse_spec(text);
  const auto coord = [&]() -> std::size_t {
    if (!spec.params.count("coord")) return 0;
    const auto c = detail::get_int(spec, "coord");
    if (c < 0) throw ConfigError("coord must be >= 0 in '" + text + "'");
    return static_cast<std::size_t>(c);
  };
  if (spec.name == "const") {
    detail::expect_keys(spec, {"c"});
    return constant(detail::get_double(spec, "c"));
  }
  if (spec.name == "cos" || spec.name == "sin") {
    detail::expect_keys(spec, {"k", "coord"});
    const int k = spec.params.count("k") ? static_cast<int>(detail::get_int(spec, "k")) : 1;
    return spec.name == "cos" ? cosine(k, coord()) : sine(k, coord());
  }
  if (spec.name == "arc") {
    detail::expect_keys(spec, {"a", "coord"});
    return arc(detail::get_double(spec, "a"), coord());
  }
  if (spec.name == "cylinder") {
    detail::expect_keys(spec, {});
    return cylinder(action);
  }
  if (spec.name == "component") {
    detail::expect_keys(spec, {"j"});
    return component(static_cast<int>(detail::get_int(spec, "j")));
  }
  if (spec.name == "invsqrt") {
    detail::expect_keys(spec, {});
    return inverse_sqrt();
  }
  if (spec.name == "tent") {
    detail::expect_keys(spec, {"w"});
    return tent(detail::get_int(spec, "w"));
  }
  if (spec.name == "site") {
    detail::expect_keys(spec, {"s"});
    return site(detail::get_int(spec, "s"));
  }
  throw ConfigError("unknown observable '" + text + "'");
}

std::vector<std::string> split_operator(const std::string& text, std::string_view op) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(op, start);
    out.push_back(detail::trim_copy(std::string_view(text).substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + op.size();
  }
  return out;
}

}  // namespace

Observable parse(std::string_view spec, const ActionPtr& action) {
  const std::string text = detail::trim_copy(spec);
  if (text.empty()) throw ConfigError("empty observable spec");
  std::optional<Observable> total;
  for (const auto& summand : split_operator(text, " + ")) {
    std::optional<Observable> term;
    for (const auto& factor : split_operator(summand, " * ")) {
      auto o = parse_term(factor, action);
      term = term ? product(*term, o) : o;
    }
    total = total ? sum(*total, *term) : *term;
  }
  return *total;
}

std::vector<Observable> default_dictionary(const ActionPtr& action, int max_frequency) {
  std::vector<Observable> dict{constant(1.0)};
  const auto add_circle_terms = [&](std::size_t coords) {
    for (std::size_t c = 0; c < coords; ++c) {
      for (int k = 1; k <= max_frequency; ++k) {
        dict.push_back(cosine(k, c));
        dict.push_back(sine(k, c));
      }
      for (double a : {0.25, 0.5, 0.75}) dict.push_back(arc(a, c));
    }
  };
  switch (action->phase_space()) {
    case PhaseSpace::circle:
      add_circle_terms(1);
      break;
    case PhaseSpace::torus:
      add_circle_terms(static_cast<const TorusAction&>(*action).dimension());
      break;
    case PhaseSpace::two_circle:
      dict.push_back(component(0));
      dict.push_back(component(1));
      add_circle_terms(1);
      break;
    case PhaseSpace::shift:
      dict.push_back(cylinder(action));
      break;
    case PhaseSpace::line:
      dict.push_back(tent(5));
      break;
    case PhaseSpace::product:
      break;
  }
  return dict;
}

}  // namespace observables

namespace {

bool has_real_coordinate(const Action& action, std::size_t coordinate) {
  try {
    real_coordinate(action.default_point(), coordinate);
    return true;
  } catch (const ConfigError&) {
    return false;
  }
}

}  // namespace

std::optional<double> exact_integral(const Action& action, const Observable& phi) {
  const auto& p = phi.params();
  switch (phi.kind()) {
    case ObservableKind::constant:
      if (!action.compact()) return std::nullopt;
      return p.value;
    case ObservableKind::cosine:
      if (!has_real_coordinate(action, p.coordinate)) return std::nullopt;
      return p.frequency == 0 ? 1.0 : 0.0;
    case ObservableKind::sine:
      if (!has_real_coordinate(action, p.coordinate)) return std::nullopt;
      return 0.0;
    case ObservableKind::arc:
      if (!has_real_coordinate(action, p.coordinate)) return std::nullopt;
      return p.value;
    case ObservableKind::cylinder:
      return 0.5;
    case ObservableKind::component:
      if (action.phase_space() != PhaseSpace::two_circle) return std::nullopt;
      return 0.5;
    default:
      return std::nullopt;
  }
}

}  // namespace folnerlab
