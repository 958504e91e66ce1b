#include "dqm/rational.hpp"

#include <limits>

#include "dqm/errors.hpp"

namespace dqm {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(__int128 v) {
  return v >= std::numeric_limits<long long>::min() &&
         v <= std::numeric_limits<long long>::max();
}

}  // namespace

Rational Rational::reduce(__int128 num, __int128 den) {
  if (den == 0) throw Error("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits64(num) || !fits64(den)) throw Error("rational: 64-bit overflow");
  Rational r;
  r.num_ = static_cast<long long>(num);
  r.den_ = static_cast<long long>(den);
  return r;
}

Rational::Rational(long long num, long long den) {
  *this = reduce(num, den);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::reduce(
      static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
      static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::reduce(
      static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
      static_cast<__int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::reduce(static_cast<__int128>(a.num_) * b.num_,
                          static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw Error("rational: division by zero");
  return Rational::reduce(static_cast<__int128>(a.num_) * b.den_,
                          static_cast<__int128>(a.den_) * b.num_);
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw Error("rational: empty literal");
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      long long n = std::stoll(text.substr(0, slash));
      long long d = std::stoll(text.substr(slash + 1));
      return Rational(n, d);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) {
      return Rational(std::stoll(text));
    }
    std::string head = text.substr(0, dot);
    std::string tail = text.substr(dot + 1);
    if (tail.empty() || tail.size() > 18) throw Error("rational: bad decimal '" + text + "'");
    for (char c : tail) {
      if (c < '0' || c > '9') throw Error("rational: bad decimal '" + text + "'");
    }
    bool negative = !head.empty() && head[0] == '-';
    long long whole = (head.empty() || head == "-" || head == "+") ? 0 : std::stoll(head);
    long long den = 1;
    for (size_t i = 0; i < tail.size(); ++i) den *= 10;
    long long frac = std::stoll(tail);
    __int128 num = static_cast<__int128>(whole < 0 ? -whole : whole) * den + frac;
    if (negative || whole < 0) num = -num;
    return reduce(num, den);
  } catch (const std::invalid_argument&) {
    throw Error("rational: bad literal '" + text + "'");
  } catch (const std::out_of_range&) {
    throw Error("rational: literal out of range '" + text + "'");
  }
}

}  // namespace dqm
