#include "ncdef/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ncdef {

std::string to_string(const Scalar& s) { return s.get_str(); }

namespace {

bool is_integer_literal(std::string_view t) {
  if (t.empty()) return false;
  std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i == t.size()) return false;
  for (; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
  return true;
}

std::string_view trim(std::string_view t) {
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
  return t;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  const auto t = trim(text);
  const auto slash = t.find('/');
  const auto num = t.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view{"1"} : t.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  const mpz_class n{std::string(num[0] == '+' ? num.substr(1) : num)};
  const mpz_class d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace ncdef
