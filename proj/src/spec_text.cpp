#include "spec_text.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "folnerlab/error.hpp"

namespace folnerlab::detail {

std::string trim_copy(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split_top_level(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') ++depth;
    else if (c == ')' || c == ']') --depth;
    else if (c == sep && depth == 0) {
      out.push_back(trim_copy(s.substr(start, i - start)));
      start = i + 1;
    }
    if (depth < 0) throw ConfigError("unbalanced brackets in '" + std::string(s) + "'");
  }
  if (depth != 0) throw ConfigError("unbalanced brackets in '" + std::string(s) + "'");
  out.push_back(trim_copy(s.substr(start)));
  return out;
}

namespace {

bool is_identifier(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

void add_param(ParsedSpec& out, const std::string& item) {
  const auto eq = item.find('=');
  if (eq == std::string::npos) throw ConfigError("expected key=value in '" + out.text + "', got '" + item + "'");
  auto key = trim_copy(std::string_view(item).substr(0, eq));
  if (!is_identifier(key)) throw ConfigError("bad parameter name '" + key + "' in '" + out.text + "'");
  if (out.params.count(key)) throw ConfigError("duplicate parameter '" + key + "' in '" + out.text + "'");
  out.params[key] = trim_copy(std::string_view(item).substr(eq + 1));
}

}  // namespace

ParsedSpec parse_spec(std::string_view spec_in) {
  ParsedSpec out;
  const std::string spec = trim_copy(spec_in);
  out.text = spec;
  if (spec.empty()) throw ConfigError("empty spec");
  const auto paren = spec.find('(');
  const auto colon = spec.find(':');
  if (paren != std::string::npos && (colon == std::string::npos || paren < colon)) {
    if (spec.back() != ')') throw ConfigError("expected ')' at end of '" + spec + "'");
    out.name = trim_copy(std::string_view(spec).substr(0, paren));
    const auto inner = std::string_view(spec).substr(paren + 1, spec.size() - paren - 2);
    const auto semis = split_top_level(inner, ';');
    if (semis.size() > 1) {
      out.args = semis;
    } else {
      const auto pieces = split_top_level(inner, ',');
      const bool all_params = std::all_of(pieces.begin(), pieces.end(), [](const std::string& p) {
        const auto eq = p.find('=');
        return eq != std::string::npos && is_identifier(trim_copy(std::string_view(p).substr(0, eq)));
      });
      if (all_params) {
        for (const auto& p : pieces) add_param(out, p);
      } else {
        out.args = semis;
      }
    }
  } else if (colon != std::string::npos) {
    out.name = trim_copy(std::string_view(spec).substr(0, colon));
    for (const auto& item : split_top_level(std::string_view(spec).substr(colon + 1), ','))
      if (!item.empty()) add_param(out, item);
  } else {
    out.name = spec;
  }
  if (!is_identifier(out.name)) throw ConfigError("bad spec name in '" + spec + "'");
  for (const auto& a : out.args)
    if (a.empty()) throw ConfigError("empty argument in '" + spec + "'");
  return out;
}

void expect_keys(const ParsedSpec& spec, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : spec.params)
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError("unknown parameter '" + key + "' in '" + spec.text + "'");
  if (!spec.args.empty()) throw ConfigError("'" + spec.name + "' takes no nested arguments");
}

namespace {

const std::string& require(const ParsedSpec& spec, const std::string& key) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) throw ConfigError("missing parameter '" + key + "' in '" + spec.text + "'");
  return it->second;
}

}  // namespace

double parse_double(std::string_view text, std::string_view context) {
  const std::string t = trim_copy(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
    throw ConfigError("expected a finite number, got '" + t + "' in '" + std::string(context) + "'");
  return v;
}

std::int64_t parse_int(std::string_view text, std::string_view context) {
  const std::string t = trim_copy(text);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError("expected an integer, got '" + t + "' in '" + std::string(context) + "'");
  return v;
}

double get_double(const ParsedSpec& spec, const std::string& key) {
  return parse_double(require(spec, key), spec.text);
}

std::int64_t get_int(const ParsedSpec& spec, const std::string& key) {
  return parse_int(require(spec, key), spec.text);
}

std::uint64_t get_u64(const ParsedSpec& spec, const std::string& key) {
  const std::string t = trim_copy(require(spec, key));
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError("expected an unsigned integer, got '" + t + "' in '" + spec.text + "'");
  return v;
}

std::vector<double> get_double_list(const ParsedSpec& spec, const std::string& key) {
  std::string t = trim_copy(require(spec, key));
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') return {parse_double(t, spec.text)};
  std::vector<double> out;
  const auto inner = std::string_view(t).substr(1, t.size() - 2);
  if (trim_copy(inner).empty()) return out;
  for (const auto& item : split_top_level(inner, ',')) out.push_back(parse_double(item, spec.text));
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace folnerlab::detail
