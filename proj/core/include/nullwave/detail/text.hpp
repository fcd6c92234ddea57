#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nullwave::detail {

inline std::string_view trim(std::string_view s) noexcept {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::optional<double> parse_double(std::string_view s) noexcept {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

template <class Int>
std::optional<Int> parse_integer(std::string_view s) noexcept {
  s = trim(s);
  Int value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

/// "name(a, b)" -> {"name", {a, b}}; "name" -> {"name", {}}. nullopt on bad syntax.
struct Call {
  std::string name;
  std::vector<double> args;
};

inline std::optional<Call> parse_call(std::string_view text) {
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos) {
    if (text.empty()) return std::nullopt;
    return Call{std::string(text), {}};
  }
  if (text.back() != ')') return std::nullopt;
  Call call{std::string(trim(text.substr(0, open))), {}};
  const auto inner = trim(text.substr(open + 1, text.size() - open - 2));
  if (inner.empty()) return call;
  for (auto piece : split(inner, ',')) {
    const auto v = parse_double(piece);
    if (!v) return std::nullopt;
    call.args.push_back(*v);
  }
  return call;
}

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace nullwave::detail
