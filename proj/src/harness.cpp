#include "besselint/harness.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "besselint/integral.hpp"

namespace besselint {

namespace {

using FKey = std::tuple<double, double, double>;

// F and G are shared across every bound at a grid point; cache them.
class TargetCache {
public:
    LogValue get(Target target, double nu, double gamma, double x) {
        auto& store = target == Target::F ? f_ : g_;
        const FKey key{nu, gamma, x};
        auto it = store.find(key);
        if (it != store.end()) return it->second;
        const ParamPoint p(nu, gamma, x);
        LogValue v = target == Target::F ? integral_f(p) : integral_g(p);
        store.emplace(key, v);
        return v;
    }

private:
    std::map<FKey, LogValue> f_, g_;
};

double signed_margin(Side side, const LogValue& bound, const LogValue& target) {
    const LogValue diff =
        side == Side::Lower ? (target - bound) : (bound - target);
    return diff.ratio_to(target);
}

nlohmann::json point_to_json(const PointRecord& rec, double rel_slack) {
    return nlohmann::json{
        {"bound_id", rec.bound_id},
        {"point", {{"nu", rec.nu}, {"gamma", rec.gamma}, {"x", rec.x}}},
        {"value",
         {{"sign", rec.bound_value.sign()},
          {"log_magnitude", rec.bound_value.log_magnitude()}}},
        {"target",
         {{"sign", rec.target_value.sign()},
          {"log_magnitude", rec.target_value.log_magnitude()}}},
        {"margin", rec.margin},
        {"violation", rec.margin < -rel_slack}};
}

}  // namespace

SweepConfig default_sweep_config() {
    SweepConfig cfg;
    cfg.nu_grid = {-0.4, -0.1, 0.0, 0.25, 0.5, 1.0, 1.5, 2.5, 5.0, 10.0};
    cfg.gamma_grid = {0.1, 0.25, 0.5, 0.75, 0.9};
    cfg.x_grid = {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0, 50.0, 100.0, 200.0};
    return cfg;
}

SweepReport run_sweep(const SweepConfig& cfg) {
    return run_sweep(cfg, list_bounds());
}

SweepReport run_sweep(const SweepConfig& cfg, const std::vector<BoundSpec>& registry) {
    if (cfg.nu_grid.empty() || cfg.gamma_grid.empty() || cfg.x_grid.empty())
        throw std::domain_error("run_sweep: grids must be nonempty");
    if (!(cfg.rel_slack >= 0.0 && cfg.rel_slack <= 1e-6))
        throw std::domain_error("run_sweep: rel_slack in [0, 1e-6] required");

    std::vector<const BoundSpec*> selected;
    for (const BoundSpec& b : registry) {
        if (cfg.bound_ids.empty()) {
            selected.push_back(&b);
            continue;
        }
        for (const std::string& id : cfg.bound_ids)
            if (b.id == id) {
                selected.push_back(&b);
                break;
            }
    }
    if (!cfg.bound_ids.empty() && selected.size() != cfg.bound_ids.size())
        throw std::invalid_argument("run_sweep: unknown bound id in selection");

    SweepReport report;
    report.rel_slack = cfg.rel_slack;
    TargetCache cache;
    for (const BoundSpec* b : selected) {
        BoundReport br;
        br.id = b->id;
        for (double nu : cfg.nu_grid)
            for (double gamma : cfg.gamma_grid)
                for (double x : cfg.x_grid) {
                    ParamPoint p(nu, gamma, x);
                    if (b->validity(p) != nullptr) continue;
                    if (x == 0.0) continue;  // both sides vanish; nothing to compare
                    try {
                        LogValue bound = b->evaluator(p, cfg.truncation);
                        LogValue target = cache.get(b->target, nu, gamma, x);
                        PointRecord rec{b->id,  nu,     gamma,
                                        x,      bound,  target,
                                        signed_margin(b->side, bound, target)};
                        ++br.points_checked;
                        ++report.total_points;
                        br.min_margin = std::min(br.min_margin, rec.margin);
                        if (rec.margin < -cfg.rel_slack) {
                            br.violations.push_back(rec);
                            ++report.total_violations;
                        }
                        report.points.push_back(std::move(rec));
                    } catch (const std::exception& e) {
                        report.failures.push_back({b->id, nu, gamma, x, e.what()});
                    }
                }
        report.per_bound.push_back(std::move(br));
    }
    return report;
}

std::vector<std::pair<double, double>> tightness_check(const std::string& id, double nu,
                                                       double gamma,
                                                       const std::vector<double>& xs) {
    const BoundSpec& b = find_bound(id);
    if (!b.tight_at_infinity)
        throw std::domain_error("tightness_check: " + id + " is not flagged tight");
    std::vector<std::pair<double, double>> out;
    out.reserve(xs.size());
    for (double x : xs) {
        ParamPoint p(nu, gamma, x);
        LogValue bound = evaluate_bound(id, p);
        LogValue target =
            b.target == Target::F ? integral_f(p) : integral_g(p);
        out.emplace_back(x, bound.ratio_to(target));
    }
    return out;
}

std::vector<std::pair<double, double>> table_rows(const TableSpec& spec) {
    std::vector<std::pair<double, double>> rows;
    for (double gamma : spec.gamma_grid)
        for (double nu : spec.nu_grid) rows.emplace_back(nu, gamma);
    return rows;
}

std::vector<std::vector<double>> make_table(const TableSpec& spec) {
    if (spec.which != 1 && spec.which != 2)
        throw std::domain_error("make_table: which must be 1 or 2");
    std::vector<std::vector<double>> table;
    for (const auto& [nu, gamma] : table_rows(spec)) {
        std::vector<double> row;
        for (double x : spec.x_grid) {
            ParamPoint p(nu, gamma, x);
            LogValue f = integral_f(p);
            double entry;
            if (spec.which == 1) {
                LogValue lower = evaluate_bound("L-INEQB4", p, TruncatedSum{5});
                entry = (f - lower).ratio_to(f);
            } else {
                LogValue upper = evaluate_bound("U-GAU2", p);
                entry = (upper - f).ratio_to(f);
            }
            row.push_back(std::round(entry * 1e4) / 1e4);
        }
        table.push_back(std::move(row));
    }
    return table;
}

LimitReport limit_checks() {
    LimitReport report;
    auto add = [&](std::string name, double measured, double expected, double tol) {
        const bool ok = std::fabs(measured - expected) <= tol;
        report.checks.push_back({std::move(name), measured, expected, tol, ok});
        report.all_ok = report.all_ok && ok;
    };

    // (a) upper-bound blow-up near x = 0: U/F ~ (2nu+1)/((1-gamma)x)
    {
        const ParamPoint p(1.0, 0.25, 1e-3);
        const double ratio =
            evaluate_bound("U-GAU2", p).ratio_to(integral_f(p));
        const double predicted = (2.0 * p.nu + 1.0) / ((1.0 - p.gamma) * p.x);
        add("upper_ratio_small_x(nu=1,gamma=0.25,x=1e-3)", ratio, predicted,
            0.05 * predicted);
    }

    // (b) truncation loss of the 5-term lower bound at large x, gamma = 0.75:
    // 1 - L/F -> 1 - (sum_{k<5} 0.75^k)/4 = 0.2373
    {
        const ParamPoint p(1.0, 0.75, 2000.0);
        const double rel_err =
            1.0 - evaluate_bound("L-INEQB4", p, TruncatedSum{5}).ratio_to(integral_f(p));
        add("lower_rel_error_large_x(nu=1,gamma=0.75,x=2000)", rel_err, 0.2373, 0.005);
    }

    // (c) small-x limit of the lower-bound relative error: 1/(2(nu+1))
    for (double nu : {1.0, 2.5}) {
        const ParamPoint p(nu, 0.25, 1e-3);
        const double rel_err =
            1.0 - evaluate_bound("L-INEQB4", p, TruncatedSum{5}).ratio_to(integral_f(p));
        const double expected = 1.0 / (2.0 * (nu + 1.0));
        add("lower_rel_error_small_x(nu=" + std::to_string(nu) + ")", rel_err, expected,
            1e-2);
    }
    return report;
}

void write_report_json(const SweepReport& r, std::ostream& os) {
    nlohmann::json j;
    j["total_points"] = r.total_points;
    j["total_violations"] = r.total_violations;
    j["clean"] = r.clean();
    j["rel_slack"] = r.rel_slack;
    j["per_bound"] = nlohmann::json::array();
    for (const BoundReport& br : r.per_bound) {
        nlohmann::json jb;
        jb["bound_id"] = br.id;
        jb["points_checked"] = br.points_checked;
        jb["min_margin"] =
            br.points_checked > 0 ? nlohmann::json(br.min_margin) : nlohmann::json();
        jb["violations"] = nlohmann::json::array();
        for (const PointRecord& v : br.violations)
            jb["violations"].push_back(point_to_json(v, r.rel_slack));
        j["per_bound"].push_back(std::move(jb));
    }
    j["points"] = nlohmann::json::array();
    for (const PointRecord& rec : r.points) j["points"].push_back(point_to_json(rec, r.rel_slack));
    j["failures"] = nlohmann::json::array();
    for (const PointFailure& f : r.failures)
        j["failures"].push_back({{"bound_id", f.bound_id},
                                 {"nu", f.nu},
                                 {"gamma", f.gamma},
                                 {"x", f.x},
                                 {"message", f.message}});
    os << j.dump(2) << "\n";
}

namespace {

void csv_number(std::ostream& os, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

}  // namespace

void write_report_csv(const SweepReport& r, std::ostream& os) {
    os << "bound_id,nu,gamma,x,bound_sign,bound_log_magnitude,target_sign,"
          "target_log_magnitude,margin,violation\n";
    for (const PointRecord& rec : r.points) {
        const bool violation = rec.margin < -r.rel_slack;
        os << rec.bound_id << ",";
        csv_number(os, rec.nu);
        os << ",";
        csv_number(os, rec.gamma);
        os << ",";
        csv_number(os, rec.x);
        os << "," << rec.bound_value.sign() << ",";
        csv_number(os, rec.bound_value.log_magnitude());
        os << "," << rec.target_value.sign() << ",";
        csv_number(os, rec.target_value.log_magnitude());
        os << ",";
        csv_number(os, rec.margin);
        os << "," << (violation ? 1 : 0) << "\n";
    }
}

void write_table_json(const TableSpec& spec, const std::vector<std::vector<double>>& t,
                      std::ostream& os) {
    nlohmann::json j;
    j["which"] = spec.which;
    j["x_grid"] = spec.x_grid;
    j["rows"] = nlohmann::json::array();
    auto rows = table_rows(spec);
    for (size_t i = 0; i < t.size(); ++i)
        j["rows"].push_back({{"nu", rows[i].first},
                             {"gamma", rows[i].second},
                             {"entries", t[i]}});
    os << j.dump(2) << "\n";
}

void write_table_csv(const TableSpec& spec, const std::vector<std::vector<double>>& t,
                     std::ostream& os) {
    os << "nu,gamma";
    for (double x : spec.x_grid) {
        os << ",x=";
        csv_number(os, x);
    }
    os << "\n";
    auto rows = table_rows(spec);
    for (size_t i = 0; i < t.size(); ++i) {
        csv_number(os, rows[i].first);
        os << ",";
        csv_number(os, rows[i].second);
        for (double v : t[i]) {
            os << ",";
            csv_number(os, v);
        }
        os << "\n";
    }
}

}  // namespace besselint
