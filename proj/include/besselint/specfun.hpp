#pragma once

#include <stdexcept>

#include "besselint/logvalue.hpp"

namespace besselint {

// Order of a Bessel/Struve function. Each operation documents (and enforces)
// its own admissible range.
struct Order {
    double nu;

    explicit Order(double v) : nu(v) {
        if (!std::isfinite(v))
            throw std::domain_error("Order: nu must be finite");
    }
};

// I_nu(x) for x > 0, nu >= -1/2 (negative integer orders are folded by the
// symmetry I_{-n} = I_n). Evaluated by the defining power series with a
// running-exponent renormalization; relative error <= 1e-12 for x <= 5000.
LogValue bessel_i_scaled(Order nu, double x);

// K_nu(x) for x > 0, any finite order (K_{-nu} = K_nu is applied
// internally). Trapezoidal evaluation of int_0^inf e^{-x cosh t} cosh(nu t) dt
// with the e^x scaling folded into the integrand.
LogValue bessel_k_scaled(Order nu, double x);

// Lower incomplete gamma gamma(a,x) = int_0^x t^{a-1} e^{-t} dt, a > 0,
// x >= 0. Series for x < a+1, continued fraction for the complement above.
LogValue lower_incomplete_gamma(double a, double x);

// Modified Struve function L_nu(x), x > 0, nu > -3/2.
LogValue struve_l(Order nu, double x);

// Gamma function as a LogValue; a must not be a nonpositive integer.
LogValue gamma_fn(double a);

namespace detail {

// I_mu(x) for mu > -3/2 (series for mu > -1, one recurrence step below).
// Sign-carrying: I_mu < 0 is possible for mu < -1.
LogValue bessel_i_log(double mu, double x);

// I_mu(x) - (x/2)^mu / Gamma(mu+1): the series with its leading term
// removed, summed directly so small x loses no precision. Requires mu > -1.
LogValue bessel_i_minus_lead(double mu, double x);

// D_mu(x) = I_mu(x) - L_mu(x), mu > -3/2, evaluated without the
// catastrophic cancellation of subtracting the two e^x-sized functions:
// integral representation for mu > -1/2, closed form at mu = -1/2, one
// step of the inhomogeneous recurrence below that.
LogValue bessel_i_minus_struve(double mu, double x);

}  // namespace detail

}  // namespace besselint
