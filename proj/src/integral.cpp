#include "besselint/integral.hpp"

#include <cmath>

#include "besselint/quadrature.hpp"

namespace besselint {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

// log of int_0^u e^{-gamma t} t^a dt, u > 0, a > -1.
double log_weighted_power_integral(double a, double gamma, double u) {
    if (gamma == 0.0) return (a + 1.0) * std::log(u) - std::log(a + 1.0);
    // = gamma^{-(a+1)} * gamma_lower(a+1, gamma u)
    return lower_incomplete_gamma(a + 1.0, gamma * u).log_magnitude() -
           (a + 1.0) * std::log(gamma);
}

// Term-wise integration of t^nu I_{nu+shift}(t) against e^{-gamma t} over
// [0, u]. Exact for the t^nu endpoint behaviour, any nu > -1/2.
LogValue series_integral_to(double nu, double gamma, double u, int shift, int term_cap) {
    const double s = shift;
    LogValue sum = LogValue::zero();
    double prev_log_term = std::numeric_limits<double>::infinity();
    for (int k = 0; k < term_cap; ++k) {
        const double a = 2.0 * nu + s + 2.0 * k;  // power of t in the k-th term
        const double log_coef = -(nu + s + 2.0 * k) * std::log(2.0) -
                                std::lgamma(nu + s + k + 1.0) - std::lgamma(k + 1.0);
        const double log_term = log_coef + log_weighted_power_integral(a, gamma, u);
        sum = sum + LogValue::from_log(log_term);
        const bool decaying = log_term < prev_log_term;
        if (decaying && log_term < sum.log_magnitude() - 42.0) return sum;
        prev_log_term = log_term;
    }
    throw std::runtime_error("besselint: integral series failed to converge within the term cap");
}

}  // namespace

namespace detail {

LogValue integral_series(double nu, double gamma, double x, int shift) {
    if (x == 0.0) return LogValue::zero();
    if (x > 500.0)
        throw std::domain_error("integral_series: x <= 500 required");
    return series_integral_to(nu, gamma, x, shift, 100000);
}

LogValue integral_quad(double nu, double gamma, double x, int shift) {
    if (x == 0.0) return LogValue::zero();
    const double t0 = std::min(1.0, x);
    LogValue head = series_integral_to(nu, gamma, t0, shift, 500);
    if (x <= t0) return head;

    // Tail on [t0, x]: integrate the rescaled, bounded integrand
    //   t^nu Ibar_{nu+shift}(t) e^{(1-gamma)(t-x)} / scale,   Ibar = e^{-t} I,
    // and reattach scale * e^{(1-gamma)x} symbolically.
    const double order = nu + shift;
    const double log_scale =
        nu * std::log(x) + detail::bessel_i_log(order, x).log_magnitude() - x;
    auto integrand = [&](double t) {
        const double log_ibar = detail::bessel_i_log(order, t).log_magnitude() - t;
        return std::exp(nu * std::log(t) + log_ibar + (1.0 - gamma) * (t - x) - log_scale);
    };
    const double tail =
        quad::gauss_kronrod_adaptive(integrand, t0, x, 1e-11, 1e-15, 2000);
    LogValue tail_value =
        LogValue::from_log(log_scale + (1.0 - gamma) * x + std::log(tail));
    return head + tail_value;
}

}  // namespace detail

LogValue integral_f(const ParamPoint& p) {
    if (p.x == 0.0) return LogValue::zero();
    if (p.gamma == 0.0) return integral_f_gamma0(Order(p.nu), p.x);
    if (p.gamma == 1.0) return integral_f_gamma1(Order(p.nu), p.x);
    return detail::integral_quad(p.nu, p.gamma, p.x, 0);
}

LogValue integral_f_series(const ParamPoint& p) {
    if (!(p.gamma > 0.0 && p.gamma < 1.0))
        throw std::domain_error("integral_f_series: gamma in (0,1) required");
    return detail::integral_series(p.nu, p.gamma, p.x, 0);
}

LogValue integral_f_gamma1(Order nu, double x) {
    const double v = nu.nu;
    if (!(v > -0.5)) throw std::domain_error("integral_f_gamma1: nu > -1/2 required");
    if (!(x > 0.0)) throw std::domain_error("integral_f_gamma1: x > 0 required");
    LogValue ii = bessel_i_scaled(nu, x) + bessel_i_scaled(Order(v + 1.0), x);
    return LogValue::from_log(-x + (v + 1.0) * std::log(x) - std::log(2.0 * v + 1.0)) * ii;
}

LogValue integral_f_gamma0(Order nu, double x) {
    const double v = nu.nu;
    if (!(v > -0.5)) throw std::domain_error("integral_f_gamma0: nu > -1/2 required");
    if (!(x > 0.0)) throw std::domain_error("integral_f_gamma0: x > 0 required");
    LogValue i_lo = detail::bessel_i_log(v - 1.0, x);
    LogValue i_hi = detail::bessel_i_log(v, x);
    LogValue d_lo = detail::bessel_i_minus_struve(v - 1.0, x);
    LogValue d_hi = detail::bessel_i_minus_struve(v, x);
    LogValue pref = LogValue::from_log(0.5 * std::log(kPi) + (v - 1.0) * std::log(2.0) +
                                       std::lgamma(v + 0.5) + std::log(x));
    return pref * (i_lo * d_hi - i_hi * d_lo);
}

LogValue integral_g(const ParamPoint& p) {
    if (!(p.gamma > 0.0 && p.gamma < 1.0))
        throw std::domain_error("integral_g: gamma in (0,1) required");
    if (p.x == 0.0) return LogValue::zero();
    return detail::integral_quad(p.nu, p.gamma, p.x, 1);
}

}  // namespace besselint
