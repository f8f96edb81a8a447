#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace besselint::quad {

struct GkPanel {
    double a, b, value, error;
};

namespace detail {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK dqk15 constants).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
GkPanel gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double fs = f(c - dx) + f(c + dx);
        kron += kWgk[i] * fs;
        if (i % 2 == 1) gauss += kWg[i / 2] * fs;
    }
    kron *= h;
    gauss *= h;
    double err = std::fabs(kron - gauss);
    // QUADPACK-style sharpening of the raw difference.
    if (err > 0.0) err = std::min(err, 200.0 * err * std::sqrt(err / std::max(std::fabs(kron), 1e-300)));
    return {a, b, kron, err};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod: repeatedly bisects the panel with the
// largest error estimate until sum(err) <= rel_tol * |sum(value)| + abs_tol.
template <class F>
double gauss_kronrod_adaptive(F&& f, double a, double b, double rel_tol,
                              double abs_tol = 0.0, int max_panels = 2000) {
    if (!(b > a)) {
        if (b == a) return 0.0;
        throw std::domain_error("gauss_kronrod_adaptive: empty interval");
    }
    std::vector<GkPanel> panels;
    panels.push_back(detail::gk15(f, a, b));
    while (static_cast<int>(panels.size()) < max_panels) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            err += panels[i].error;
            if (panels[i].error > panels[worst].error) worst = i;
        }
        if (err <= rel_tol * std::fabs(total) + abs_tol) return total;
        GkPanel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b)
            throw std::runtime_error("gauss_kronrod_adaptive: panel underflow before convergence");
        panels[worst] = detail::gk15(f, p.a, mid);
        panels.push_back(detail::gk15(f, mid, p.b));
    }
    throw std::runtime_error("gauss_kronrod_adaptive: panel budget exhausted before reaching tolerance");
}

// Tanh-sinh (double exponential) rule on a finite interval. Nodes cluster
// double-exponentially at both endpoints, so integrable endpoint
// singularities such as t^p, p > -1, converge geometrically.
template <class F>
double tanh_sinh(F&& f, double a, double b, double rel_tol = 1e-13,
                 int max_level = 12) {
    const double c = 0.5 * (a + b);
    const double d = 0.5 * (b - a);
    const double half_pi = 1.5707963267948966;

    auto node_sum = [&](double h, int first, int stride) {
        // Sum of w(jh) f(x(jh)) over j = +-first, +-(first+stride), ...
        double s = 0.0;
        for (int side = -1; side <= 1; side += 2) {
            for (int j = first;; j += stride) {
                const double u = side * j * h;
                const double es = half_pi * std::sinh(u);
                if (std::fabs(es) > 40.0) break;
                const double x = c + d * std::tanh(es);
                if (x <= a || x >= b) break;  // node collapsed onto an endpoint
                const double w = half_pi * std::cosh(u) / std::pow(std::cosh(es), 2);
                const double fx = f(x);
                if (!std::isfinite(fx))
                    throw std::runtime_error("tanh_sinh: integrand not finite at interior node");
                s += w * fx;
            }
        }
        return s;
    };

    double h = 1.0;
    double sum = f(c) * half_pi;  // j = 0 node
    sum += node_sum(h, 1, 1);
    double estimate = d * h * sum;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        sum += node_sum(h, 1, 2);  // new (odd-index) nodes at this level
        const double next = d * h * sum;
        const double change = std::fabs(next - estimate);
        estimate = next;
        if (level >= 3 && change <= rel_tol * std::fabs(estimate)) return estimate;
    }
    return estimate;
}

}  // namespace besselint::quad
