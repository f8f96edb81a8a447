#include "besselint/stein.hpp"

#include <cmath>
#include <limits>

#include "besselint/integral.hpp"
#include "besselint/specfun.hpp"

namespace besselint {

LogValue expression_e(const ExprPoint& q) {
    if (q.x == 0.0) return LogValue::from_double(limit_at_zero(q.n, q.nu));
    LogValue pref = LogValue::from_log(-q.beta * q.x + (1.0 - q.nu) * std::log(q.x));
    LogValue k = bessel_k_scaled(Order(q.nu + q.n), q.x);
    LogValue f = integral_f(ParamPoint(q.nu, -q.beta, q.x));
    return pref * k * f;
}

double uniform_upper(int n, double nu, double beta) {
    if (!(nu > -0.5)) throw std::domain_error("uniform_upper: nu > -1/2 required");
    if (!(beta > -1.0 && beta < 0.0))
        throw std::domain_error("uniform_upper: beta in (-1,0) required");
    if (n < 0 || n > 2) throw std::domain_error("uniform_upper: n in {0,1,2} required");
    const double denom = (2.0 * nu + 1.0) * (1.0 + beta);
    if (nu >= 0.5)
        return (n == 2 ? 2.0 * (nu + 1.0) : (nu + 1.0)) / denom;
    return (n == 2 ? (2.0 * nu + 7.0) : 0.5 * (2.0 * nu + 7.0)) / denom;
}

ScanResult supremum_scan(int n, double nu, double beta,
                         const std::vector<double>& x_grid) {
    if (x_grid.empty()) throw std::domain_error("supremum_scan: empty grid");
    ScanResult best{limit_at_zero(n, nu), 0.0};
    // The x -> infinity boundary limit participates only when the grid
    // actually reaches the far region it certifies.
    double grid_max = 0.0;
    for (double x : x_grid) grid_max = std::max(grid_max, x);
    if (grid_max >= 50.0 / (1.0 + beta)) {
        const double at_inf = limit_at_infinity(beta);
        if (at_inf > best.sup_value)
            best = {at_inf, std::numeric_limits<double>::infinity()};
    }
    for (double x : x_grid) {
        const double v = expression_e(ExprPoint(nu, beta, x, n)).to_double();
        if (v > best.sup_value) best = {v, x};
    }
    return best;
}

std::vector<double> default_scan_grid(double beta) {
    const int points = 2000;
    const double lo = 1e-6, hi = 300.0 / (1.0 + beta);
    std::vector<double> grid(points);
    const double step = std::log(hi / lo) / (points - 1);
    for (int i = 0; i < points; ++i) grid[i] = lo * std::exp(i * step);
    return grid;
}

double product_ik(int shift, double nu, double x) {
    if (!(x > 0.0)) throw std::domain_error("product_ik: x > 0 required");
    if (shift < 0 || shift > 2)
        throw std::domain_error("product_ik: shift in {0,1,2} required");
    return (LogValue::from_log(std::log(x)) * bessel_k_scaled(Order(nu + shift), x) *
            bessel_i_scaled(Order(nu), x))
        .to_double();
}

double limit_at_zero(int n, double nu) {
    return n == 2 ? 2.0 * (nu + 1.0) / (2.0 * nu + 1.0) : 0.0;
}

double limit_at_infinity(double beta) { return 1.0 / (2.0 * (1.0 + beta)); }

}  // namespace besselint
