#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <stdexcept>

namespace besselint {

// Sign-and-log representation of a real number: value = sign * exp(logmag).
// Keeps quantities like e^{(1-gamma)x} x^{nu-1/2} computable far beyond the
// double range; logmag magnitudes up to ~1e6 are routine.
class LogValue {
public:
    constexpr LogValue() = default;

    static LogValue zero() { return LogValue(); }

    static LogValue from_log(double logmag, int sign = +1) {
        if (sign == 0 || logmag == -std::numeric_limits<double>::infinity())
            return zero();
        if (!std::isfinite(logmag))
            throw std::domain_error("LogValue: log magnitude must be finite");
        LogValue v;
        v.sign_ = sign > 0 ? +1 : -1;
        v.logmag_ = logmag;
        return v;
    }

    static LogValue from_double(double x) {
        if (!std::isfinite(x))
            throw std::domain_error("LogValue: value must be finite");
        if (x == 0.0) return zero();
        return from_log(std::log(std::fabs(x)), x > 0 ? +1 : -1);
    }

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }

    // Natural log of |value|; -inf for zero.
    double log_magnitude() const {
        return sign_ == 0 ? -std::numeric_limits<double>::infinity() : logmag_;
    }

    // Best-effort conversion; overflows to +-inf, underflows to 0.
    double to_double() const {
        if (sign_ == 0) return 0.0;
        return sign_ * std::exp(logmag_);
    }

    bool representable_as_double() const {
        if (sign_ == 0) return true;
        double d = std::exp(logmag_);
        return std::isfinite(d) && d != 0.0;
    }

    LogValue operator-() const {
        LogValue v = *this;
        v.sign_ = -v.sign_;
        return v;
    }

    LogValue operator*(const LogValue& o) const {
        if (sign_ == 0 || o.sign_ == 0) return zero();
        return from_log(logmag_ + o.logmag_, sign_ * o.sign_);
    }

    LogValue operator/(const LogValue& o) const {
        if (o.sign_ == 0)
            throw std::domain_error("LogValue: division by zero");
        if (sign_ == 0) return zero();
        return from_log(logmag_ - o.logmag_, sign_ * o.sign_);
    }

    // log-sum-exp with sign handling; exact zero on full cancellation.
    LogValue operator+(const LogValue& o) const {
        if (sign_ == 0) return o;
        if (o.sign_ == 0) return *this;
        double hi = logmag_, lo = o.logmag_;
        int shi = sign_, slo = o.sign_;
        if (lo > hi) {
            std::swap(hi, lo);
            std::swap(shi, slo);
        }
        if (shi == slo)
            return from_log(hi + std::log1p(std::exp(lo - hi)), shi);
        if (hi == lo) return zero();
        double d = -std::expm1(lo - hi);  // in (0,1]
        return from_log(hi + std::log(d), shi);
    }

    LogValue operator-(const LogValue& o) const { return *this + (-o); }

    // Ratio as a plain double: this/other, valid whenever the magnitudes are
    // within double range of each other.
    double ratio_to(const LogValue& o) const {
        if (o.sign_ == 0)
            throw std::domain_error("LogValue: ratio to zero");
        if (sign_ == 0) return 0.0;
        return sign_ * o.sign_ * std::exp(logmag_ - o.logmag_);
    }

    bool operator==(const LogValue& o) const {
        return sign_ == o.sign_ && (sign_ == 0 || logmag_ == o.logmag_);
    }

    // Orders as the represented reals.
    std::partial_ordering operator<=>(const LogValue& o) const {
        if (sign_ != o.sign_) return sign_ <=> o.sign_;
        if (sign_ == 0) return std::partial_ordering::equivalent;
        if (sign_ > 0) return logmag_ <=> o.logmag_;
        return o.logmag_ <=> logmag_;
    }

private:
    int sign_ = 0;
    double logmag_ = -std::numeric_limits<double>::infinity();
};

inline LogValue scale(const LogValue& v, double c) {
    return v * LogValue::from_double(c);
}

}  // namespace besselint
