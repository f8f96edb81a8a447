#pragma once

#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "besselint/bounds.hpp"

namespace besselint {

struct SweepConfig {
    std::vector<std::string> bound_ids;  // empty = whole registry
    std::vector<double> nu_grid;
    std::vector<double> gamma_grid;
    std::vector<double> x_grid;
    double rel_slack = 1e-9;
    TruncatedSum truncation{5};
};

// The standard verification grid: every registered bound over
// nu x gamma x x = 10 x 5 x 11 points, intersected with validity.
SweepConfig default_sweep_config();

// One evaluated (bound, grid point) pair. margin is signed in units of the
// target: (F-B)/F for lower bounds, (B-F)/F for upper bounds; a point is a
// violation when margin < -rel_slack.
struct PointRecord {
    std::string bound_id;
    double nu, gamma, x;
    LogValue bound_value;
    LogValue target_value;
    double margin;
};

// A point whose evaluation threw; sweeps record these and continue.
struct PointFailure {
    std::string bound_id;
    double nu, gamma, x;
    std::string message;
};

struct BoundReport {
    std::string id;
    int points_checked = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    std::vector<PointRecord> violations;
};

struct SweepReport {
    std::vector<BoundReport> per_bound;
    std::vector<PointRecord> points;  // every evaluated pair, sweep order
    std::vector<PointFailure> failures;
    int total_points = 0;
    int total_violations = 0;
    double rel_slack = 1e-9;

    bool clean() const { return total_violations == 0 && failures.empty(); }
};

SweepReport run_sweep(const SweepConfig& cfg);
// Sweep against a caller-supplied registry (used by the side-inversion
// self-test); cfg.bound_ids filters by id within that registry.
SweepReport run_sweep(const SweepConfig& cfg, const std::vector<BoundSpec>& registry);

// Ratios bound/target along an x-sequence for a bound flagged tight at
// infinity; throws std::domain_error if the bound is not flagged tight.
std::vector<std::pair<double, double>> tightness_check(const std::string& id, double nu,
                                                       double gamma,
                                                       const std::vector<double>& xs);

// Grid for the published 12x7 relative-error tables: rows are (nu, gamma)
// pairs with gamma outermost, columns are x.
struct TableSpec {
    std::vector<double> nu_grid{1.0, 2.5, 5.0, 10.0};
    std::vector<double> gamma_grid{0.25, 0.5, 0.75};
    std::vector<double> x_grid{0.5, 5.0, 10.0, 15.0, 25.0, 50.0, 100.0};
    int which = 1;  // 1: (F-L)/F with the 5-term sum bound; 2: (U-F)/F
};

// Entries rounded to 4 decimals, matching the published tables.
std::vector<std::vector<double>> make_table(const TableSpec& spec);

// Row labels "(nu,gamma)" in table order.
std::vector<std::pair<double, double>> table_rows(const TableSpec& spec);

struct LimitCheck {
    std::string name;
    double measured;
    double expected;
    double tolerance;  // absolute on |measured - expected| unless relative noted in name
    bool ok;
};

struct LimitReport {
    std::vector<LimitCheck> checks;
    bool all_ok = true;
};

// Small-x and large-x behaviour of the two-sided geometric-sum/ratio bounds:
// (a) U/F near 0 matches (2nu+1)/((1-gamma)x); (b) 1-L/F at large x under
// heavy truncation loss; (c) 1-L/F near 0 matches 1/(2(nu+1)).
LimitReport limit_checks();

// Serialization. JSON carries the full report; CSV is one row per evaluated
// point (columns: bound_id, nu, gamma, x, bound_sign, bound_log_magnitude,
// target_sign, target_log_magnitude, margin, violation).
void write_report_json(const SweepReport& r, std::ostream& os);
void write_report_csv(const SweepReport& r, std::ostream& os);
void write_table_json(const TableSpec& spec, const std::vector<std::vector<double>>& t,
                      std::ostream& os);
void write_table_csv(const TableSpec& spec, const std::vector<std::vector<double>>& t,
                     std::ostream& os);

}  // namespace besselint
