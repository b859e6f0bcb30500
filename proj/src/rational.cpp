#include "saffine/rational.hpp"

#include <cctype>
#include <string>

#include "saffine/errors.hpp"

namespace saffine {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string_view num = s;
  std::string_view den = "1";
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den)) {
    throw InputError("not a rational literal: \"" + std::string(text) + "\"");
  }
  mpz_class p(std::string(num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw InputError("zero denominator in \"" + std::string(text) + "\"");
  Rational r(negative ? mpz_class(-p) : p, q);
  r.canonicalize();
  return r;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_rational(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational power(const Rational& q, unsigned k) {
  // q is canonical, so num^k / den^k is already in lowest terms.
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), q.get_num_mpz_t(), k);
  mpz_pow_ui(out.get_den_mpz_t(), q.get_den_mpz_t(), k);
  return out;
}

Rational binomial(unsigned n, unsigned k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return Rational(out);
}

}  // namespace saffine
