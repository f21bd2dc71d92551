#pragma once

// Complex literals of the form "re", "im i", "re+im i", "re-im i", where the
// imaginary coefficient may be omitted ("i", "-i", "2+i"). Real parts accept
// any decimal or exponent notation understood by strtod.

#include <cctype>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

#include "coupling.hpp"

namespace zrp {

namespace detail {

// Parses a full real number from s; nullopt on trailing garbage.
inline std::optional<double> parse_real(std::string_view s) {
  if (s.empty()) return std::nullopt;
  const std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || buf.find_first_of(" \t") != std::string::npos) return std::nullopt;
  // Reject "inf", "nan" and hexadecimal forms.
  for (char ch : buf)
    if (std::isalpha(static_cast<unsigned char>(ch)) && ch != 'e' && ch != 'E') return std::nullopt;
  return v;
}

} // namespace detail

inline std::optional<cplx> parse_complex(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.back() != 'i') {
    const auto r = detail::parse_real(s);
    return r ? std::optional<cplx>(cplx(*r, 0.0)) : std::nullopt;
  }
  s.remove_suffix(1);

  // Split at the last sign that is not the leading sign and not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string_view re_part = split == std::string_view::npos ? std::string_view{} : s.substr(0, split);
  std::string_view im_part = split == std::string_view::npos ? s : s.substr(split);

  double im = 0.0;
  if (im_part.empty() || im_part == "+") im = 1.0;
  else if (im_part == "-") im = -1.0;
  else {
    if (im_part.front() == '+') im_part.remove_prefix(1);
    const auto v = detail::parse_real(im_part);
    if (!v) return std::nullopt;
    im = *v;
  }
  double re = 0.0;
  if (!re_part.empty()) {
    const auto v = detail::parse_real(re_part);
    if (!v) return std::nullopt;
    re = *v;
  }
  return cplx(re, im);
}

} // namespace zrp
