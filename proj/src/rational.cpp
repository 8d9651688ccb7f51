#include "csg/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace csg {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::string_view num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    mpz_class d{std::string(den), 10};
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    out = Rational(mpz_class(std::string(num), 10), d);
    out.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || !all_digits(fp))
      throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    mpz_class digits{std::string(ip.empty() ? "0" : ip) + std::string(fp), 10};
    out = Rational(digits, scale);
    out.canonicalize();
  } else {
    if (!all_digits(body))
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    out = Rational(mpz_class(std::string(body), 10));
  }
  if (negative) out = -out;
  return out;
}

std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_str();
}

std::string to_decimal(const Rational& r, unsigned digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  Rational shifted = abs(r) * scale;
  // floor(x + 1/2) for x >= 0
  mpz_class twice_num = 2 * shifted.get_num() + shifted.get_den();
  mpz_class twice_den = 2 * shifted.get_den();
  mpz_class rounded;
  mpz_fdiv_q(rounded.get_mpz_t(), twice_num.get_mpz_t(), twice_den.get_mpz_t());

  std::string s = rounded.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  std::string out = s.substr(0, s.size() - digits);
  if (digits > 0) out += "." + s.substr(s.size() - digits);
  if (sgn(r) < 0 && rounded != 0) out.insert(0, "-");
  return out;
}

}  // namespace csg
