#pragma once

#include <cstdint>
#include <string>

namespace dqm {

// Exact rational arithmetic on a 64-bit numerator over a positive 64-bit
// denominator, always kept reduced. Intermediates are evaluated in 128 bits;
// a result that does not fit back into 64 bits after reduction throws.
// Everything handled here (job counts, penalties, late probabilities, stage
// costs and their sums) stays far below that limit at the scales this
// library targets.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: integers are rationals
  Rational(long long num, long long den);

  long long num() const { return num_; }
  long long den() const { return den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  // "5", "-2/3"
  std::string to_string() const;

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  // Accepts "3", "-3/4" and decimal literals such as "0.25".
  static Rational parse(const std::string& text);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  static Rational reduce(__int128 num, __int128 den);

  long long num_;
  long long den_;  // > 0, gcd(num_, den_) == 1
};

}  // namespace dqm
