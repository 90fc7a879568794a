#pragma once

#include <cmath>
#include <string>

#include <gmpxx.h>

#include "qwtorus/errors.hpp"

namespace qwtorus {

// Exact rational scalar. All verification-grade arithmetic runs on this type;
// simulation and large-torus estimates use plain double.
using Rat = mpq_class;

// Parses "p/r" or a plain integer string into an exact rational.
// Decimal strings are rejected: the caller decides float vs exact by syntax.
Rat rat_from_string(const std::string& s);

std::string rat_to_string(const Rat& x);

inline double to_double(const Rat& x) { return x.get_d(); }
inline double to_double(double x) { return x; }

// q^n for integer n >= 0 with q^0 == 1, also at q == 0.
template <class S>
S qpow(const S& q, long n) {
    if (n < 0) throw structural_error("qpow: negative exponent");
    S acc(1);
    S base = q;
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

// Strictly positive real stored as its natural log. Supports the product/sum
// operations needed for Gibbs weights on tori too large for double.
class LogDouble {
  public:
    LogDouble() : lg_(0.0) {}
    static LogDouble from_log(double lg) { LogDouble x; x.lg_ = lg; return x; }
    static LogDouble from_double(double v) {
        if (!(v > 0.0)) throw structural_error("LogDouble: value must be > 0");
        return from_log(std::log(v));
    }

    double log_value() const { return lg_; }
    double value() const { return std::exp(lg_); }

    LogDouble& operator*=(const LogDouble& o) { lg_ += o.lg_; return *this; }
    LogDouble& operator/=(const LogDouble& o) { lg_ -= o.lg_; return *this; }
    friend LogDouble operator*(LogDouble a, const LogDouble& b) { return a *= b; }
    friend LogDouble operator/(LogDouble a, const LogDouble& b) { return a /= b; }

    // log-sum-exp; both operands positive by construction.
    friend LogDouble operator+(const LogDouble& a, const LogDouble& b) {
        double hi = std::max(a.lg_, b.lg_), lo = std::min(a.lg_, b.lg_);
        return from_log(hi + std::log1p(std::exp(lo - hi)));
    }

    friend bool operator<(const LogDouble& a, const LogDouble& b) { return a.lg_ < b.lg_; }

  private:
    double lg_;
};

} // namespace qwtorus
