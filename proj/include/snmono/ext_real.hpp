#pragma once

#include "snmono/common.hpp"

#include <cmath>
#include <limits>
#include <ostream>

namespace snmono {

// Value in ]-inf, +inf].  Minus infinity is rejected on construction; the
// convex machinery here never produces it.
class ExtReal {
 public:
  ExtReal() = default;
  ExtReal(double v) : v_(v) {  // NOLINT: implicit by design
    if (std::isnan(v)) throw Error("ExtReal: NaN");
    if (v == -std::numeric_limits<double>::infinity()) throw Error("ExtReal: -inf forbidden");
    inf_ = (v == std::numeric_limits<double>::infinity());
  }

  static ExtReal infinity() {
    ExtReal r;
    r.inf_ = true;
    return r;
  }

  bool is_finite() const { return !inf_; }
  bool is_infinite() const { return inf_; }

  double value() const {
    if (inf_) throw Error("ExtReal: value() on +inf");
    return v_;
  }
  double value_or(double if_inf) const { return inf_ ? if_inf : v_; }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtReal(a.v_ + b.v_);
  }
  friend ExtReal operator-(const ExtReal& a, double b) {
    if (a.inf_) return infinity();
    return ExtReal(a.v_ - b);
  }
  friend ExtReal operator*(double s, const ExtReal& a) {
    if (a.inf_) {
      if (s <= 0.0) throw Error("ExtReal: nonpositive scale of +inf");
      return infinity();
    }
    return ExtReal(s * a.v_);
  }
  friend bool operator<(const ExtReal& a, const ExtReal& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return !(b < a); }
  friend bool operator>=(const ExtReal& a, const ExtReal& b) { return !(a < b); }

  // Finite comparison with slack; +inf >= anything.
  bool dominates(double rhs, double slack = 0.0) const { return inf_ || v_ >= rhs - slack; }

  friend std::ostream& operator<<(std::ostream& os, const ExtReal& r) {
    if (r.inf_) return os << "inf";
    return os << r.v_;
  }

 private:
  double v_ = 0.0;
  bool inf_ = false;
};

}  // namespace snmono
