#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "taskgraph/error.hpp"

namespace taskgraph {

// Exact rational used for the partial-credit metrics. The numerator and
// denominator are kept exactly as constructed (a progress of 2/4 stays
// 2/4, its denominator is the number of checks); comparisons are by value,
// arithmetic reduces its result to keep intermediates small.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}

  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw Error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  static Rational whole(std::int64_t n) { return Rational(n, 1); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  Rational reduced() const {
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g == 0) return Rational(0, 1);
    return Rational(num_ / g, den_ / g);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ ==
           static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <
           static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational x = a.reduced(), y = b.reduced();
    return Rational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_)
        .reduced();
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num_, b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational x = a.reduced(), y = b.reduced();
    return Rational(x.num_ * y.num_, x.den_ * y.den_).reduced();
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error("rational division by zero");
    return a * Rational(b.den_, b.num_);
  }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace taskgraph
