#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <utility>

#include "simpcert/error.hpp"

namespace simpcert {

using BigInt = boost::multiprecision::cpp_int;

BigInt pow_int(BigInt base, long long e);

// Floor division, b > 0.
BigInt floor_div(const BigInt& a, const BigInt& b);

// Exact element of Z[1/q]: num / q^exp with exp >= 0.
// Canonical form: exp == 0, or q does not divide num. Two values are equal
// iff their canonical triples (q, num, exp) are equal.
class QRational {
public:
  QRational() = default;  // zero over the default base 2

  static QRational make(BigInt num, long long exp, int q) {
    require(q >= 2, "QRational: base q must be at least 2 (got " + std::to_string(q) + ")");
    require(exp >= 0, "QRational: exponent must be non-negative");
    QRational r;
    r.q_ = q;
    r.num_ = std::move(num);
    r.exp_ = exp;
    r.reduce();
    return r;
  }

  static QRational integer(BigInt n, int q) { return make(std::move(n), 0, q); }
  static QRational zero(int q) { return integer(0, q); }
  static QRational one(int q) { return integer(1, q); }

  int base() const { return q_; }
  const BigInt& numerator() const { return num_; }
  long long exponent() const { return exp_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return exp_ == 0; }

  QRational operator-() const {
    QRational r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend QRational operator+(const QRational& a, const QRational& b) {
    a.check_same_base(b, "add");
    long long e = std::max(a.exp_, b.exp_);
    BigInt m = a.num_ * pow_int(a.q_, e - a.exp_) + b.num_ * pow_int(b.q_, e - b.exp_);
    return make(std::move(m), e, a.q_);
  }

  friend QRational operator-(const QRational& a, const QRational& b) { return a + (-b); }

  friend QRational operator*(const QRational& a, const QRational& b) {
    a.check_same_base(b, "mul");
    return make(a.num_ * b.num_, a.exp_ + b.exp_, a.q_);
  }

  // Multiply by q^j, j of either sign; stays in Z[1/q].
  QRational times_pow_q(long long j) const {
    if (j >= 0) {
      long long drop = std::min(j, exp_);
      return make(num_ * pow_int(q_, j - drop), exp_ - drop, q_);
    }
    return make(num_, exp_ - j, q_);
  }

  // Exact division by an integer n coprime to q (e.g. q-1). Requires n | num.
  QRational div_exact(const BigInt& n) const {
    check_internal(n != 0 && num_ % n == 0, "QRational::div_exact: not divisible");
    return make(num_ / n, exp_, q_);
  }

  friend bool operator==(const QRational& a, const QRational& b) {
    return a.q_ == b.q_ && a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend bool operator!=(const QRational& a, const QRational& b) { return !(a == b); }

  friend bool operator<(const QRational& a, const QRational& b) {
    a.check_same_base(b, "compare");
    long long e = std::max(a.exp_, b.exp_);
    return a.num_ * pow_int(a.q_, e - a.exp_) < b.num_ * pow_int(b.q_, e - b.exp_);
  }
  friend bool operator>(const QRational& a, const QRational& b) { return b < a; }
  friend bool operator<=(const QRational& a, const QRational& b) { return !(b < a); }
  friend bool operator>=(const QRational& a, const QRational& b) { return !(a < b); }

  BigInt floor() const { return floor_div(num_, pow_int(q_, exp_)); }
  BigInt ceil() const { return -floor_div(-num_, pow_int(q_, exp_)); }

  // Membership in the ideal I = (q-1) Z[1/q]. Since q = 1 mod (q-1), powers
  // of q are units mod (q-1) and it is enough to test the numerator.
  bool in_ideal() const { return q_ == 2 || num_ % (q_ - 1) == 0; }

  std::string to_string() const;

private:
  void reduce() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    while (exp_ > 0 && num_ % q_ == 0) {
      num_ /= q_;
      --exp_;
    }
  }

  void check_same_base(const QRational& other, const char* op) const {
    require(q_ == other.q_, std::string("QRational: mismatched base q in ") + op + ": " +
                                std::to_string(q_) + " vs " + std::to_string(other.q_));
  }

  int q_ = 2;
  BigInt num_ = 0;
  long long exp_ = 0;
};

// Parse "m", "m/q" or "m/q^k"; the base in the literal must equal q.
QRational parse_qrational(const std::string& text, int q);

// Smallest-scale grid point strictly between a and b. The grid at scale j is
// { i/q^j } (or { (q-1) i/q^j } with require_ideal); scales are tried in
// increasing order and the numerator closest to zero wins (ties positive).
QRational between(const QRational& a, const QRational& b, bool require_ideal);

// If a == q^t * b for some integer t, return t.
std::optional<long long> power_of_q_ratio(const QRational& a, const QRational& b);

struct Interval {
  QRational lo;
  QRational hi;

  Interval(QRational l, QRational h) : lo(std::move(l)), hi(std::move(h)) {
    require(lo < hi, "Interval: lo must be strictly below hi");
  }
};

}  // namespace simpcert
