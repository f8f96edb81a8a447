#pragma once

#include <stdexcept>
#include <vector>

#include "besselint/logvalue.hpp"

namespace besselint {

// Argument of E_n(nu, beta, x) = e^{-beta x} K_{nu+n}(x) x^{1-nu} *
// int_0^x e^{beta t} t^nu I_nu(t) dt, the kernel expressions with a
// second-kind Bessel factor of order nu, nu+1 or nu+2.
struct ExprPoint {
    double nu;
    double beta;
    double x;
    int n;

    ExprPoint(double nu_, double beta_, double x_, int n_)
        : nu(nu_), beta(beta_), x(x_), n(n_) {
        if (!(nu > -0.5)) throw std::domain_error("ExprPoint: nu > -1/2 required");
        if (!(beta > -1.0 && beta < 0.0))
            throw std::domain_error("ExprPoint: beta in (-1,0) required");
        if (!(x >= 0.0)) throw std::domain_error("ExprPoint: x >= 0 required");
        if (n < 0 || n > 2) throw std::domain_error("ExprPoint: n in {0,1,2} required");
    }
};

// E_n at q; x = 0 is defined by the analytic limit (2(nu+1)/(2nu+1) for n=2,
// 0 for n in {0,1}) since K and x^{1-nu} are singular there.
LogValue expression_e(const ExprPoint& q);

// Sharpest applicable uniform upper constant for sup_x E_n:
//   nu >= 1/2: (nu+1)/((2nu+1)(1+beta)) for n in {0,1},
//              2(nu+1)/((2nu+1)(1+beta)) for n = 2;
//   -1/2 < nu < 1/2: (2nu+7)/(2(2nu+1)(1+beta)) for n in {0,1},
//                    (2nu+7)/((2nu+1)(1+beta)) for n = 2.
double uniform_upper(int n, double nu, double beta);

struct ScanResult {
    double sup_value;
    double argmax_x;  // +inf when the x->infinity limit dominates
};

// Max of E_n over the grid plus the analytic boundary limits; the x->infinity
// limit is counted only when the grid reaches at least 50/(1+beta).
ScanResult supremum_scan(int n, double nu, double beta,
                         const std::vector<double>& x_grid);

// 2000 log-spaced points on [1e-6, 300/(1+beta)].
std::vector<double> default_scan_grid(double beta);

// x K_{nu+shift}(x) I_nu(x), for the product inequalities.
double product_ik(int shift, double nu, double x);

// Boundary limits of E_n.
double limit_at_zero(int n, double nu);
double limit_at_infinity(double beta);

}  // namespace besselint
