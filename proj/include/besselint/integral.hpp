#pragma once

#include <stdexcept>

#include "besselint/logvalue.hpp"
#include "besselint/specfun.hpp"

namespace besselint {

// Parameter point (nu, gamma, x) of the integral
// F(nu,gamma,x) = int_0^x e^{-gamma t} t^nu I_nu(t) dt.
// gamma endpoints 0 and 1 are admitted only so the closed forms can live on
// the same type; the general evaluators require the open interval.
struct ParamPoint {
    double nu;
    double gamma;
    double x;

    ParamPoint(double nu_, double gamma_, double x_) : nu(nu_), gamma(gamma_), x(x_) {
        if (!(nu > -0.5))
            throw std::domain_error("ParamPoint: nu > -1/2 required");
        if (!(gamma >= 0.0 && gamma <= 1.0))
            throw std::domain_error("ParamPoint: gamma in [0,1] required");
        if (!(x >= 0.0))
            throw std::domain_error("ParamPoint: x >= 0 required");
    }
};

// F by the split scheme: term-wise series on [0, min(1,x)], adaptive
// Gauss-Kronrod on the exponent-rescaled integrand above. gamma endpoints
// are routed to the closed forms below.
LogValue integral_f(const ParamPoint& p);

// F by term-wise integration of the I_nu power series over the whole range;
// practical for x <= 500, gamma in (0,1).
LogValue integral_f_series(const ParamPoint& p);

// Closed form at gamma = 1: e^{-x} x^{nu+1} (I_nu(x) + I_{nu+1}(x)) / (2nu+1).
LogValue integral_f_gamma1(Order nu, double x);

// Closed form at gamma = 0 via the modified Struve function, rearranged as
// sqrt(pi) 2^{nu-1} Gamma(nu+1/2) x (I_{nu-1} D_nu - I_nu D_{nu-1}) with
// D_mu = I_mu - L_mu, which stays well conditioned for large x.
LogValue integral_f_gamma0(Order nu, double x);

// G(nu,gamma,x) = int_0^x e^{-gamma t} t^nu I_{nu+1}(t) dt, gamma in (0,1).
LogValue integral_g(const ParamPoint& p);

namespace detail {

// Shared series + quadrature evaluator of int_0^x e^{-gamma t} t^nu
// I_{nu+shift}(t) dt for gamma in [0,1]. Used by integral_f / integral_g and
// as the cross-check path for the gamma endpoints.
LogValue integral_quad(double nu, double gamma, double x, int shift);

// Term-wise series for the same integral (x <= 500).
LogValue integral_series(double nu, double gamma, double x, int shift);

}  // namespace detail

}  // namespace besselint
