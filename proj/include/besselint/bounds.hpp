#pragma once

#include <functional>
#include <string>
#include <vector>

#include "besselint/integral.hpp"
#include "besselint/logvalue.hpp"

namespace besselint {

enum class Target { F, G };
enum class Side { Upper, Lower };

// Truncation depth for the geometric Bessel-sum lower bound (L-INEQB4 and the
// Table-1 column); the default matches the published tables.
struct TruncatedSum {
    int terms = 5;
};

// One registered closed-form bound: which integral it bounds (F or G), from
// which side, where it is valid, and whether its ratio to the target tends to
// 1 as x -> infinity.
struct BoundSpec {
    std::string id;
    Target target;
    Side side;
    bool tight_at_infinity;
    // Returns nullptr when p is inside the validity region, otherwise the
    // violated constraint, spelled out.
    std::function<const char*(const ParamPoint&)> validity;
    std::function<LogValue(const ParamPoint&, const TruncatedSum&)> evaluator;
};

// All registered bounds, in a stable order.
const std::vector<BoundSpec>& list_bounds();

// Lookup by id; throws std::invalid_argument for an unknown id.
const BoundSpec& find_bound(const std::string& id);

// True iff p lies in the bound's validity region.
bool validity(const std::string& id, const ParamPoint& p);

// Evaluate the bound at p; throws std::domain_error naming the violated
// constraint when p is outside the validity region. All bounds are 0 at x=0.
LogValue evaluate_bound(const std::string& id, const ParamPoint& p,
                        const TruncatedSum& opts = {});

// max{ 2(nu+1+x*)/(2nu+1), x*/((1-gamma)x* - 1) }, the prefactor of the
// restricted-range upper bound U-THM21; requires x* > 1/(1-gamma).
double m_factor(Order nu, double gamma, double x_star);

// Default threshold policy for U-THM21: x* = 2/(1-gamma).
double default_x_star(double gamma);

}  // namespace besselint
