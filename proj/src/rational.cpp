#include "chl/rational.hpp"

#include <cctype>

namespace chl {

std::optional<Rational> rat_from_string(const std::string& s) {
  if (s.empty()) return std::nullopt;
  size_t i = 0;
  auto scan_int = [&](std::string& out) -> bool {
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) out.push_back(s[i++]);
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) out.push_back(s[i++]);
    return i > start;
  };
  std::string num, den;
  if (!scan_int(num)) return std::nullopt;
  if (i < s.size()) {
    if (s[i] != '/') return std::nullopt;
    ++i;
    if (!scan_int(den)) return std::nullopt;
    if (i != s.size()) return std::nullopt;
  }
  try {
    Rational q(num + (den.empty() ? "" : "/" + den));
    if (q.get_den() == 0) return std::nullopt;
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

std::string rat_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace chl
