#include "besselint/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace besselint {

namespace {

// e^{-gamma x} x^nu I_{nu+shift}(x)
LogValue weighted_bessel(const ParamPoint& p, double shift) {
    return LogValue::from_log(-p.gamma * p.x + p.nu * std::log(p.x)) *
           bessel_i_scaled(Order(p.nu + shift), p.x);
}

// (1/(1-gamma)) { e^{-gamma x} x^nu (I_nu(x) - (x/2)^nu/Gamma(nu+1))
//                 - gamma_lower(2nu+1, gamma x) / (Gamma(nu+1) 2^nu gamma^{2nu}) }
// Lower bound on both F and G for -1/2 < nu <= 0. The subtracted leading term
// is computed without cancellation via the tail series.
LogValue incomplete_gamma_lower_bound(const ParamPoint& p) {
    const double v = p.nu;
    LogValue head = LogValue::from_log(-p.gamma * p.x + v * std::log(p.x)) *
                    detail::bessel_i_minus_lead(v, p.x);
    LogValue corr = lower_incomplete_gamma(2.0 * v + 1.0, p.gamma * p.x) *
                    LogValue::from_log(-std::lgamma(v + 1.0) - v * std::log(2.0) -
                                       2.0 * v * std::log(p.gamma));
    return scale(head - corr, 1.0 / (1.0 - p.gamma));
}

// (1/(1-gamma)) (1 - a/x) e^{-gamma x} x^nu I_nu(x) for a bound-specific
// constant a; shared by L-INEQB3/12/22/23.
LogValue one_minus_over_x_bound(const ParamPoint& p, double a) {
    const double factor = (1.0 - a / p.x) / (1.0 - p.gamma);
    return scale(weighted_bessel(p, 0.0), factor);
}

// e^{-gamma x} x^nu sum_{k=0}^{K-1} gamma^k I_{nu+k+1}(x)
LogValue truncated_sum_bound(const ParamPoint& p, int terms) {
    if (terms < 1) throw std::domain_error("truncated sum: terms >= 1 required");
    const double log_gamma = std::log(p.gamma);
    LogValue sum = LogValue::zero();
    for (int k = 0; k < terms; ++k)
        sum = sum + LogValue::from_log(k * log_gamma) *
                        bessel_i_scaled(Order(p.nu + k + 1.0), p.x);
    return LogValue::from_log(-p.gamma * p.x + p.nu * std::log(p.x)) * sum;
}

// Same sum with the truncation depth chosen so that the dropped tail
// gamma^K I_{nu+K+1}(x)/(1-gamma) is below 1e-12 of the partial sum.
// Truncation only weakens a lower bound, so any depth is sound.
LogValue adaptive_sum_bound(const ParamPoint& p) {
    const double log_gamma = std::log(p.gamma);
    LogValue sum = LogValue::zero();
    for (int k = 0; k < 20000; ++k) {
        LogValue term = LogValue::from_log(k * log_gamma) *
                        bessel_i_scaled(Order(p.nu + k + 1.0), p.x);
        sum = sum + term;
        // I_{nu+k+1} decreases in k, so term/(1-gamma) dominates the tail.
        if (term.log_magnitude() - std::log(1.0 - p.gamma) <
            sum.log_magnitude() + std::log(1e-12)) {
            return LogValue::from_log(-p.gamma * p.x + p.nu * std::log(p.x)) * sum;
        }
    }
    throw std::runtime_error("adaptive sum bound: term cap reached");
}

const char* check_gamma_interior(const ParamPoint& p) {
    if (!(p.gamma > 0.0 && p.gamma < 1.0)) return "gamma in (0,1)";
    return nullptr;
}

std::vector<BoundSpec> build_registry() {
    std::vector<BoundSpec> r;

    auto add = [&](std::string id, Target target, Side side, bool tight,
                   std::function<const char*(const ParamPoint&)> extra_validity,
                   std::function<LogValue(const ParamPoint&, const TruncatedSum&)> eval) {
        BoundSpec b;
        b.id = std::move(id);
        b.target = target;
        b.side = side;
        b.tight_at_infinity = tight;
        b.validity = [extra_validity](const ParamPoint& p) -> const char* {
            if (const char* why = check_gamma_interior(p)) return why;
            return extra_validity ? extra_validity(p) : nullptr;
        };
        b.evaluator = std::move(eval);
        r.push_back(std::move(b));
    };

    auto nu_any = std::function<const char*(const ParamPoint&)>{};
    auto nu_nonpos = [](const ParamPoint& p) -> const char* {
        return p.nu <= 0.0 ? nullptr : "-1/2 < nu <= 0";
    };
    auto nu_ge_32 = [](const ParamPoint& p) -> const char* {
        return p.nu >= 1.5 ? nullptr : "nu >= 3/2";
    };
    auto nu_gt_12 = [](const ParamPoint& p) -> const char* {
        return p.nu > 0.5 ? nullptr : "nu > 1/2";
    };
    auto nu_ge_12 = [](const ParamPoint& p) -> const char* {
        return p.nu >= 0.5 ? nullptr : "nu >= 1/2";
    };
    auto nu_zero = [](const ParamPoint& p) -> const char* {
        return p.nu == 0.0 ? nullptr : "nu == 0";
    };

    // Upper bound M_{nu,gamma}(x*) e^{-gamma x} x^nu I_{nu+1}(x), valid only
    // for x >= x* with the default policy x* = 2/(1-gamma).
    add("U-THM21", Target::F, Side::Upper, false,
        [](const ParamPoint& p) -> const char* {
            if (p.x > 0.0 && p.x < default_x_star(p.gamma))
                return "x >= x_star (x_star = 2/(1-gamma))";
            return nullptr;
        },
        [](const ParamPoint& p, const TruncatedSum&) {
            const double xs = default_x_star(p.gamma);
            return scale(weighted_bessel(p, 1.0), m_factor(Order(p.nu), p.gamma, xs));
        });

    add("L-INEQB2", Target::F, Side::Lower, true, nu_nonpos,
        [](const ParamPoint& p, const TruncatedSum&) {
            return incomplete_gamma_lower_bound(p);
        });

    // (1/(1-gamma)) (1 - 4nu^2/((2nu-1)(1-gamma)x)) e^{-gamma x} x^nu I_nu(x)
    add("L-INEQB3", Target::F, Side::Lower, true, nu_ge_32,
        [](const ParamPoint& p, const TruncatedSum&) {
            const double a = 4.0 * p.nu * p.nu / ((2.0 * p.nu - 1.0) * (1.0 - p.gamma));
            return one_minus_over_x_bound(p, a);
        });

    add("L-INEQB4", Target::F, Side::Lower, true, nu_any,
        [](const ParamPoint& p, const TruncatedSum& opts) {
            return truncated_sum_bound(p, opts.terms);
        });

    // Exact-truncation variant: depth chosen adaptively so the dropped tail is
    // negligible relative to the partial sum.
    add("L-INEQB4X", Target::F, Side::Lower, true, nu_any,
        [](const ParamPoint& p, const TruncatedSum&) { return adaptive_sum_bound(p); });

    // (1/(1-gamma)) e^{-gamma x} (I_0(x) - 1), nu = 0 only.
    add("L-INEQB5", Target::F, Side::Lower, true, nu_zero,
        [](const ParamPoint& p, const TruncatedSum&) {
            return scale(LogValue::from_log(-p.gamma * p.x) *
                             detail::bessel_i_minus_lead(0.0, p.x),
                         1.0 / (1.0 - p.gamma));
        });

    // 2(2nu+7)/((2nu+1)(1-gamma)) e^{-gamma x} x^nu I_{nu+1}(x)
    add("U-INEQB10", Target::F, Side::Upper, false, nu_any,
        [](const ParamPoint& p, const TruncatedSum&) {
            const double c =
                2.0 * (2.0 * p.nu + 7.0) / ((2.0 * p.nu + 1.0) * (1.0 - p.gamma));
            return scale(weighted_bessel(p, 1.0), c);
        });

    // (2nu+7)/((2nu+1)(1-gamma)) e^{-gamma x} x^nu I_nu(x)
    add("U-INEQB11", Target::F, Side::Upper, false, nu_any,
        [](const ParamPoint& p, const TruncatedSum&) {
            const double c = (2.0 * p.nu + 7.0) / ((2.0 * p.nu + 1.0) * (1.0 - p.gamma));
            return scale(weighted_bessel(p, 0.0), c);
        });

    // (1/(1-gamma)) (1 - 4nu(2nu+5)/((2nu-1)(1-gamma)x)) e^{-gamma x} x^nu I_nu(x)
    add("L-INEQB12", Target::F, Side::Lower, true, nu_gt_12,
        [](const ParamPoint& p, const TruncatedSum&) {
            const double a = 4.0 * p.nu * (2.0 * p.nu + 5.0) /
                             ((2.0 * p.nu - 1.0) * (1.0 - p.gamma));
            return one_minus_over_x_bound(p, a);
        });

    // The three G-bounds: the same right-hand sides as L-INEQB2/3 and a
    // modified constant, but bounding the strictly smaller integral G.
    add("L-INEQB21", Target::G, Side::Lower, true, nu_nonpos,
        [](const ParamPoint& p, const TruncatedSum&) {
            return incomplete_gamma_lower_bound(p);
        });

    add("L-INEQB22", Target::G, Side::Lower, true, nu_ge_32,
        [](const ParamPoint& p, const TruncatedSum&) {
            const double a = 4.0 * p.nu * p.nu / ((2.0 * p.nu - 1.0) * (1.0 - p.gamma));
            return one_minus_over_x_bound(p, a);
        });

    add("L-INEQB23", Target::G, Side::Lower, true, nu_gt_12,
        [](const ParamPoint& p, const TruncatedSum&) {
            const double a = 4.0 * p.nu * (4.0 * p.nu + 1.0) /
                             ((2.0 * p.nu - 1.0) * (1.0 - p.gamma));
            return one_minus_over_x_bound(p, a);
        });

    // (1/(1-gamma)) (e^{-gamma x} I_0(x) - 1) < int_0^x e^{-gamma t} I_1(t) dt
    add("L-NEAT", Target::G, Side::Lower, false, nu_zero,
        [](const ParamPoint& p, const TruncatedSum&) {
            LogValue inner = LogValue::from_log(-p.gamma * p.x) *
                                 bessel_i_scaled(Order(0.0), p.x) -
                             LogValue::from_double(1.0);
            return scale(inner, 1.0 / (1.0 - p.gamma));
        });

    // e^{-gamma x} x^nu (2(nu+1) I_{nu+1}(x) - I_{nu+3}(x)) / ((2nu+1)(1-gamma))
    add("U-GAU9", Target::F, Side::Upper, true, nu_ge_12,
        [](const ParamPoint& p, const TruncatedSum&) {
            LogValue combo = scale(bessel_i_scaled(Order(p.nu + 1.0), p.x),
                                   2.0 * (p.nu + 1.0)) -
                             bessel_i_scaled(Order(p.nu + 3.0), p.x);
            return scale(LogValue::from_log(-p.gamma * p.x + p.nu * std::log(p.x)) * combo,
                         1.0 / ((2.0 * p.nu + 1.0) * (1.0 - p.gamma)));
        });

    // 2(nu+1)/((2nu+1)(1-gamma)) e^{-gamma x} x^nu I_{nu+1}(x)
    add("U-GAU1", Target::F, Side::Upper, false, nu_ge_12,
        [](const ParamPoint& p, const TruncatedSum&) {
            const double c =
                2.0 * (p.nu + 1.0) / ((2.0 * p.nu + 1.0) * (1.0 - p.gamma));
            return scale(weighted_bessel(p, 1.0), c);
        });

    // (1/(1-gamma)) e^{-gamma x} x^nu I_nu(x)
    add("U-GAU2", Target::F, Side::Upper, true, nu_ge_12,
        [](const ParamPoint& p, const TruncatedSum&) {
            return scale(weighted_bessel(p, 0.0), 1.0 / (1.0 - p.gamma));
        });

    // e^{-gamma x} x^nu I_{nu+1}(x), the weakest lower bound in the registry.
    add("L-OLD", Target::F, Side::Lower, false, nu_any,
        [](const ParamPoint& p, const TruncatedSum&) { return weighted_bessel(p, 1.0); });

    return r;
}

}  // namespace

const std::vector<BoundSpec>& list_bounds() {
    static const std::vector<BoundSpec> registry = build_registry();
    return registry;
}

const BoundSpec& find_bound(const std::string& id) {
    for (const BoundSpec& b : list_bounds())
        if (b.id == id) return b;
    throw std::invalid_argument("unknown bound id: " + id);
}

bool validity(const std::string& id, const ParamPoint& p) {
    return find_bound(id).validity(p) == nullptr;
}

LogValue evaluate_bound(const std::string& id, const ParamPoint& p,
                        const TruncatedSum& opts) {
    const BoundSpec& b = find_bound(id);
    if (const char* why = b.validity(p))
        throw std::domain_error(id + ": validity violated: " + why);
    if (p.x == 0.0) return LogValue::zero();
    return b.evaluator(p, opts);
}

double m_factor(Order nu, double gamma, double x_star) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::domain_error("m_factor: gamma in (0,1) required");
    if (!(nu.nu > -0.5)) throw std::domain_error("m_factor: nu > -1/2 required");
    if (!(x_star > 1.0 / (1.0 - gamma)))
        throw std::domain_error("m_factor: x_star > 1/(1-gamma) required");
    const double branch1 = 2.0 * (nu.nu + 1.0 + x_star) / (2.0 * nu.nu + 1.0);
    const double branch2 = x_star / ((1.0 - gamma) * x_star - 1.0);
    return std::max(branch1, branch2);
}

double default_x_star(double gamma) { return 2.0 / (1.0 - gamma); }

}  // namespace besselint
