#include "simpcert/qrational.hpp"

#include <cctype>

namespace simpcert {

BigInt pow_int(BigInt base, long long e) {
  check_internal(e >= 0, "pow_int: negative exponent");
  BigInt r = 1;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  check_internal(b > 0, "floor_div: divisor must be positive");
  BigInt quot = a / b;
  if (a % b != 0 && a < 0) --quot;
  return quot;
}

std::string QRational::to_string() const {
  std::string s = num_.str();
  if (exp_ > 0) s += "/" + std::to_string(q_) + "^" + std::to_string(exp_);
  return s;
}

namespace {

bool parse_uint(const std::string& s, std::size_t& pos, BigInt& out) {
  std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start) return false;
  out = BigInt(s.substr(start, pos - start));
  return true;
}

}  // namespace

QRational parse_qrational(const std::string& text, int q) {
  std::size_t pos = 0, end = text.size();
  while (pos < end && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  while (end > pos && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  std::string s = text.substr(pos, end - pos);

  pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
    negative = (s[pos] == '-');
    ++pos;
  }
  BigInt m;
  if (!parse_uint(s, pos, m)) throw Error("bad rational literal '" + text + "'");
  if (negative) m = -m;

  long long k = 0;
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    BigInt base;
    if (!parse_uint(s, pos, base)) throw Error("bad rational literal '" + text + "'");
    if (base != q)
      throw Error("literal '" + text + "' is not in Z[1/" + std::to_string(q) +
                  "]: denominator base " + base.str());
    k = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      BigInt e;
      if (!parse_uint(s, pos, e)) throw Error("bad rational literal '" + text + "'");
      require(e <= 100000, "exponent too large in '" + text + "'");
      k = e.convert_to<long long>();
    }
  }
  if (pos != s.size()) throw Error("trailing characters in rational literal '" + text + "'");
  return QRational::make(m, k, q);
}

QRational between(const QRational& a, const QRational& b, bool require_ideal) {
  require(a.base() == b.base(), "between: mismatched base q");
  require(a < b, "between: need a < b");
  const int q = a.base();
  const BigInt g = require_ideal ? BigInt(q - 1) : BigInt(1);

  for (long long j = 0; j <= 256; ++j) {
    // i must satisfy a < g i / q^j < b.
    BigInt lo_num = a.numerator() * pow_int(q, j);
    BigInt lo_den = g * pow_int(q, a.exponent());
    BigInt hi_num = b.numerator() * pow_int(q, j);
    BigInt hi_den = g * pow_int(q, b.exponent());
    BigInt i_min = floor_div(lo_num, lo_den) + 1;
    BigInt i_max = (hi_num % hi_den == 0) ? hi_num / hi_den - 1 : floor_div(hi_num, hi_den);
    if (i_min > i_max) continue;
    BigInt i = i_min > 0 ? i_min : (i_max < 0 ? i_max : BigInt(0));
    QRational c = QRational::make(g * i, j, q);
    check_internal(a < c && c < b, "between: selected point escaped the interval");
    check_internal(!require_ideal || c.in_ideal(), "between: selected point left the ideal");
    return c;
  }
  throw InternalError("between: no grid point found (interval should be dense)");
}

std::optional<long long> power_of_q_ratio(const QRational& a, const QRational& b) {
  if (a.base() != b.base() || a.is_zero() || b.is_zero()) return std::nullopt;
  const int q = a.base();
  // a/b = (a.num q^{b.exp}) / (b.num q^{a.exp}); strip powers of q from both.
  BigInt n = a.numerator();
  BigInt d = b.numerator();
  long long val_n = b.exponent();
  long long val_d = a.exponent();
  while (n % q == 0) {
    n /= q;
    ++val_n;
  }
  while (d % q == 0) {
    d /= q;
    ++val_d;
  }
  if (n != d) return std::nullopt;
  return val_n - val_d;
}

}  // namespace simpcert
