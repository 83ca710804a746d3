#pragma once

// Tiny parser for the text specs used by systems, observables and Følner
// families:  name | name:key=value,key=value | name(arg;arg) | name(key=value,...)

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace folnerlab::detail {

struct ParsedSpec {
  std::string name;
  std::map<std::string, std::string> params;
  std::vector<std::string> args;
  std::string text;
};

/// Splits on `sep` outside brackets and parentheses.
std::vector<std::string> split_top_level(std::string_view s, char sep);
std::string trim_copy(std::string_view s);

ParsedSpec parse_spec(std::string_view spec);
void expect_keys(const ParsedSpec& spec, std::initializer_list<std::string_view> allowed);

double get_double(const ParsedSpec& spec, const std::string& key);
std::int64_t get_int(const ParsedSpec& spec, const std::string& key);
std::uint64_t get_u64(const ParsedSpec& spec, const std::string& key);
std::vector<double> get_double_list(const ParsedSpec& spec, const std::string& key);

double parse_double(std::string_view text, std::string_view context);
/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);
std::int64_t parse_int(std::string_view text, std::string_view context);

}  // namespace folnerlab::detail
