#include "besselint/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "besselint/quadrature.hpp"

namespace besselint {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kLogRenorm = 300.0;           // renormalize partial sums above e^300
const double kRenorm = std::exp(kLogRenorm);
constexpr int kSeriesTermCap = 200000;

double log_cosh(double y) {
    y = std::fabs(y);
    return y + std::log1p(std::exp(-2.0 * y)) - std::log(2.0);
}

// cosh(t) - 1 without cancellation for small t.
double cosh_m1(double t) {
    const double s = std::sinh(0.5 * t);
    return 2.0 * s * s;
}

bool near_integer(double v) {
    return std::fabs(v - std::round(v)) < 1e-12;
}

// Positive-term power series sum(k>=k0) of t_k with
// t_{k+1}/t_k = q / ((k+1+c1)(k+1+c2)), log(t_{k0}) given. Carries a running
// exponent so the partial sum never overflows; Kahan-compensated.
LogValue positive_series(double log_t0, int k0, double q, double c1, double c2) {
    double offset = log_t0;
    double term = 1.0, sum = 1.0, comp = 0.0;
    for (int k = k0; k < kSeriesTermCap; ++k) {
        term *= q / ((k + 1.0 + c1) * (k + 1.0 + c2));
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (term < 1e-17 * sum) return LogValue::from_log(offset + std::log(sum));
        if (sum > kRenorm || term > kRenorm) {
            sum /= kRenorm;
            term /= kRenorm;
            comp /= kRenorm;
            offset += kLogRenorm;
        }
    }
    throw std::runtime_error("positive_series: term cap reached before convergence");
}

}  // namespace

namespace detail {

LogValue bessel_i_log(double mu, double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_i: x > 0 required");
    if (mu <= -1.5)
        throw std::domain_error("bessel_i: order must exceed -3/2");
    if (mu <= -1.0) {
        if (near_integer(mu)) return bessel_i_log(-mu, x);
        // I_mu = I_{mu+2} + (2(mu+1)/x) I_{mu+1}; signed, since I_mu can be
        // negative for mu < -1.
        return bessel_i_log(mu + 2.0, x) +
               scale(bessel_i_log(mu + 1.0, x), 2.0 * (mu + 1.0) / x);
    }
    const double log_t0 = mu * std::log(0.5 * x) - std::lgamma(mu + 1.0);
    return positive_series(log_t0, 0, 0.25 * x * x, 0.0, mu);
}

LogValue bessel_i_minus_lead(double mu, double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_i_minus_lead: x > 0 required");
    if (mu <= -1.0) throw std::domain_error("bessel_i_minus_lead: mu > -1 required");
    // First retained term is k=1: (x/2)^{mu+2} / Gamma(mu+2).
    const double log_t1 = (mu + 2.0) * std::log(0.5 * x) - std::lgamma(mu + 2.0);
    return positive_series(log_t1, 1, 0.25 * x * x, 0.0, mu);
}

LogValue bessel_i_minus_struve(double mu, double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_i_minus_struve: x > 0 required");
    if (mu <= -1.5) throw std::domain_error("bessel_i_minus_struve: mu > -3/2 required");
    if (std::fabs(mu + 0.5) < 1e-13) {
        // I_{-1/2} - L_{-1/2} = sqrt(2/(pi x)) e^{-x}
        return LogValue::from_log(0.5 * std::log(2.0 / (kPi * x)) - x);
    }
    if (mu < -0.5) {
        // D_mu = D_{mu+2} + (2(mu+1)/x) D_{mu+1} - (x/2)^{mu+1}/(sqrt(pi) Gamma(mu+5/2))
        LogValue inhom = LogValue::from_log(
            (mu + 1.0) * std::log(0.5 * x) - 0.5 * std::log(kPi) - std::lgamma(mu + 2.5));
        return bessel_i_minus_struve(mu + 2.0, x) +
               scale(bessel_i_minus_struve(mu + 1.0, x), 2.0 * (mu + 1.0) / x) - inhom;
    }
    // I_mu - L_mu = 2 (x/2)^mu / (sqrt(pi) Gamma(mu+1/2))
    //              * int_0^{pi/2} e^{-x sin(phi)} cos(phi)^{2 mu} dphi
    const double integral = quad::tanh_sinh(
        [&](double phi) {
            return std::exp(-x * std::sin(phi)) * std::pow(std::cos(phi), 2.0 * mu);
        },
        0.0, 0.5 * kPi, 1e-14);
    const double log_pref =
        std::log(2.0) + mu * std::log(0.5 * x) - 0.5 * std::log(kPi) - std::lgamma(mu + 0.5);
    return LogValue::from_log(log_pref + std::log(integral));
}

}  // namespace detail

LogValue bessel_i_scaled(Order nu, double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_i_scaled: x > 0 required");
    double v = nu.nu;
    if (v < -0.5) {
        if (near_integer(v))
            v = -std::round(v);  // I_{-n} = I_n
        else
            throw std::domain_error("bessel_i_scaled: nu >= -1/2 required");
    }
    return detail::bessel_i_log(v, x);
}

LogValue bessel_k_scaled(Order nu, double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k_scaled: x > 0 required");
    const double v = std::fabs(nu.nu);  // K_{-nu} = K_nu

    // log of the scaled integrand e^{x} e^{-x cosh t} cosh(vt).
    auto logf = [&](double t) { return -x * cosh_m1(t) + log_cosh(v * t); };

    // Locate the peak on a coarse scan; everything is summed relative to it.
    // For v^2 >> x the peak sits at an interior t, so record its position:
    // the tail cutoff below must only fire beyond it.
    double shift = logf(0.0);
    double t_peak = 0.0;
    {
        double prev = shift;
        for (double t = 0.25; t < 1e9; t += 0.25) {
            const double lf = logf(t);
            if (lf > shift) {
                shift = lf;
                t_peak = t;
            }
            if (lf < shift - 90.0 && lf < prev) break;
            prev = lf;
        }
    }

    auto half_line_sum = [&](double h) {
        // Trapezoid over [0, inf); the integrand is even in t, so this is
        // half the full-line trapezoid sum.
        double s = 0.5 * std::exp(logf(0.0) - shift);
        double prev = 1e300;
        for (int k = 1; k < 20000000; ++k) {
            const double t = k * h;
            const double lf = logf(t);
            s += std::exp(lf - shift);
            if (t > t_peak && lf < shift - 70.0 && lf < prev) return s;
            prev = lf;
        }
        throw std::runtime_error("bessel_k_scaled: trapezoid failed to decay");
    };

    double h = 0.5;
    double estimate = h * half_line_sum(h);
    for (int level = 0; level < 10; ++level) {
        h *= 0.5;
        const double next = h * half_line_sum(h);
        const bool converged = std::fabs(next - estimate) <= 1e-13 * next;
        estimate = next;
        if (converged) break;
    }
    return LogValue::from_log(std::log(estimate) + shift - x);
}

LogValue lower_incomplete_gamma(double a, double x) {
    if (!(a > 0.0)) throw std::domain_error("lower_incomplete_gamma: a > 0 required");
    if (x < 0.0) throw std::domain_error("lower_incomplete_gamma: x >= 0 required");
    if (x == 0.0) return LogValue::zero();

    if (x < a + 1.0) {
        // gamma(a,x) = x^a e^{-x} sum_{n>=0} x^n / (a (a+1) ... (a+n))
        double term = 1.0 / a, sum = term;
        for (int n = 1; n < 10000; ++n) {
            term *= x / (a + n);
            sum += term;
            if (term < 1e-17 * sum)
                return LogValue::from_log(a * std::log(x) - x + std::log(sum));
        }
        throw std::runtime_error("lower_incomplete_gamma: series failed to converge");
    }

    // Upper tail by Lentz continued fraction, then gamma(a,x) = Gamma(a) - Gamma(a,x).
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double cf = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        cf *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) {
            LogValue upper = LogValue::from_log(a * std::log(x) - x + std::log(cf));
            LogValue whole = gamma_fn(a);
            return whole - upper;
        }
    }
    throw std::runtime_error("lower_incomplete_gamma: continued fraction failed to converge");
}

LogValue struve_l(Order nu, double x) {
    if (!(x > 0.0)) throw std::domain_error("struve_l: x > 0 required");
    const double v = nu.nu;
    if (v <= -1.5) throw std::domain_error("struve_l: nu > -3/2 required");
    const double log_t0 =
        (v + 1.0) * std::log(0.5 * x) - std::lgamma(1.5) - std::lgamma(v + 1.5);
    return positive_series(log_t0, 0, 0.25 * x * x, 0.5, v + 0.5);
}

LogValue gamma_fn(double a) {
    if (!std::isfinite(a)) throw std::domain_error("gamma_fn: argument must be finite");
    if (a <= 0.0 && near_integer(a))
        throw std::domain_error("gamma_fn: nonpositive integer argument");
    int sign = +1;
    if (a < 0.0 && static_cast<long long>(std::floor(a)) % 2 != 0) sign = -1;
    return LogValue::from_log(std::lgamma(a), sign);
}

}  // namespace besselint
