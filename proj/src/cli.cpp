#include "besselint/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "besselint/bounds.hpp"
#include "besselint/harness.hpp"
#include "besselint/integral.hpp"
#include "besselint/stein.hpp"

namespace besselint {

namespace {

std::string fmt_double(double v, int sig_digits) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", sig_digits, v);
    return buf;
}

nlohmann::json logvalue_to_json(const LogValue& v) {
    nlohmann::json j;
    j["sign"] = v.sign();
    j["log_magnitude"] = v.is_zero() ? nlohmann::json() : nlohmann::json(v.log_magnitude());
    j["decimal"] =
        v.representable_as_double() ? nlohmann::json(v.to_double()) : nlohmann::json();
    return j;
}

std::string logvalue_to_text(const LogValue& v) {
    std::string out = "sign=" + std::to_string(v.sign());
    out += " log_magnitude=";
    out += v.is_zero() ? "-inf" : fmt_double(v.log_magnitude(), 6);
    out += " decimal=";
    out += v.representable_as_double() ? fmt_double(v.to_double(), 6) : "out-of-range";
    return out;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

std::vector<double> parse_number_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

std::vector<std::string> parse_id_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_eval(double nu, double gamma, double x, const std::string& format) {
    const ParamPoint p(nu, gamma, x);
    struct Entry {
        std::string name;
        LogValue value;
    };
    std::vector<Entry> results;

    results.push_back({"f_quadrature", x == 0.0 ? LogValue::zero()
                                                : detail::integral_quad(nu, gamma, x, 0)});
    if (gamma > 0.0 && gamma < 1.0 && x <= 500.0)
        results.push_back({"f_series", integral_f_series(p)});
    if (gamma > 0.0 && gamma < 1.0) results.push_back({"g", integral_g(p)});
    if (gamma == 0.0 && x > 0.0)
        results.push_back({"f_closed_form_gamma0", integral_f_gamma0(Order(nu), x)});
    if (gamma == 1.0 && x > 0.0)
        results.push_back({"f_closed_form_gamma1", integral_f_gamma1(Order(nu), x)});

    if (format == "json") {
        nlohmann::json j;
        j["nu"] = nu;
        j["gamma"] = gamma;
        j["x"] = x;
        for (const Entry& e : results) j["results"][e.name] = logvalue_to_json(e.value);
        std::cout << j.dump(2) << "\n";
    } else {
        for (const Entry& e : results)
            std::cout << e.name << ": " << logvalue_to_text(e.value) << "\n";
    }
    return 0;
}

int cmd_bounds(bool have_point, double nu, double gamma, double x,
               const std::string& ids, int terms, const std::string& format) {
    std::vector<std::string> selected = parse_id_list(ids);
    nlohmann::json jout = nlohmann::json::array();
    for (const BoundSpec& b : list_bounds()) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), b.id) == selected.end())
            continue;
        nlohmann::json jb;
        jb["id"] = b.id;
        jb["target"] = b.target == Target::F ? "F" : "G";
        jb["side"] = b.side == Side::Upper ? "upper" : "lower";
        jb["tight_at_infinity"] = b.tight_at_infinity;
        std::string line = b.id + " target=" + (b.target == Target::F ? "F" : "G") +
                           " side=" + (b.side == Side::Upper ? "upper" : "lower") +
                           " tight=" + (b.tight_at_infinity ? "yes" : "no");
        if (have_point) {
            const ParamPoint p(nu, gamma, x);
            if (const char* why = b.validity(p)) {
                jb["valid"] = false;
                jb["violated_constraint"] = why;
                line += std::string(" invalid (") + why + ")";
            } else {
                LogValue v = evaluate_bound(b.id, p, TruncatedSum{terms});
                jb["valid"] = true;
                jb["value"] = logvalue_to_json(v);
                line += " " + logvalue_to_text(v);
            }
        }
        if (format == "json")
            jout.push_back(std::move(jb));
        else
            std::cout << line << "\n";
    }
    if (format == "json") std::cout << jout.dump(2) << "\n";
    return 0;
}

// Registry copy with every bound's side flipped; drives the harness
// self-test that a wrong-sided registry is reported as violating.
std::vector<BoundSpec> inverted_registry() {
    std::vector<BoundSpec> r = list_bounds();
    for (BoundSpec& b : r)
        b.side = b.side == Side::Upper ? Side::Lower : Side::Upper;
    return r;
}

void apply_config_file(const std::string& path, SweepConfig& cfg, std::string& format,
                       std::string& out_path, bool& invert) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            const auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        if (strip(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key=value");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key == "bounds")
            cfg.bound_ids = parse_id_list(value);
        else if (key == "nu_grid")
            cfg.nu_grid = parse_number_list(value);
        else if (key == "gamma_grid")
            cfg.gamma_grid = parse_number_list(value);
        else if (key == "x_grid")
            cfg.x_grid = parse_number_list(value);
        else if (key == "slack")
            cfg.rel_slack = std::stod(value);
        else if (key == "terms")
            cfg.truncation.terms = std::stoi(value);
        else if (key == "format")
            format = value;
        else if (key == "out")
            out_path = value;
        else if (key == "invert")
            invert = value == "1" || value == "true";
        else
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": unknown key '" + key + "'");
    }
}

int cmd_verify(const SweepConfig& cfg, bool invert, const std::string& format,
               const std::string& out_path) {
    SweepReport report =
        invert ? run_sweep(cfg, inverted_registry()) : run_sweep(cfg);
    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    if (format == "csv")
        write_report_csv(report, os);
    else
        write_report_json(report, os);
    if (!report.clean()) {
        std::cerr << "verify: " << report.total_violations << " violation(s), "
                  << report.failures.size() << " failure(s)\n";
        for (const BoundReport& br : report.per_bound)
            if (!br.violations.empty())
                std::cerr << "  " << br.id << ": " << br.violations.size()
                          << " violation(s), min margin "
                          << fmt_double(br.min_margin, 6) << "\n";
        return 1;
    }
    std::cerr << "verify: clean (" << report.total_points << " points)\n";
    return 0;
}

int cmd_tables(int which, const std::string& format, const std::string& out_path) {
    TableSpec spec;
    spec.which = which;
    const auto table = make_table(spec);
    std::ofstream file;
    std::ostream& os = open_output(file, out_path);
    if (format == "json") {
        write_table_json(spec, table, os);
    } else if (format == "csv") {
        write_table_csv(spec, table, os);
    } else {
        const auto rows = table_rows(spec);
        os << "(nu,gamma) \\ x";
        for (double x : spec.x_grid) os << "\t" << fmt_double(x, 6);
        os << "\n";
        for (size_t i = 0; i < table.size(); ++i) {
            os << "(" << fmt_double(rows[i].first, 6) << ","
               << fmt_double(rows[i].second, 6) << ")";
            for (double v : table[i]) {
                char buf[16];
                std::snprintf(buf, sizeof buf, "%.4f", v);
                os << "\t" << buf;
            }
            os << "\n";
        }
    }
    return 0;
}

int cmd_limits(const std::string& format) {
    const LimitReport report = limit_checks();
    if (format == "json") {
        nlohmann::json j;
        j["all_ok"] = report.all_ok;
        j["checks"] = nlohmann::json::array();
        for (const LimitCheck& c : report.checks)
            j["checks"].push_back({{"name", c.name},
                                   {"measured", c.measured},
                                   {"expected", c.expected},
                                   {"tolerance", c.tolerance},
                                   {"ok", c.ok}});
        std::cout << j.dump(2) << "\n";
    } else {
        for (const LimitCheck& c : report.checks)
            std::cout << (c.ok ? "ok  " : "FAIL") << " " << c.name
                      << " measured=" << fmt_double(c.measured, 6)
                      << " expected=" << fmt_double(c.expected, 6)
                      << " tolerance=" << fmt_double(c.tolerance, 6) << "\n";
    }
    return report.all_ok ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Evaluate the weighted Bessel integral F(nu,gamma,x), its "
                 "closed-form bounds, and the verification suite"};
    app.require_subcommand(1);

    // eval
    double nu = 0.0, gamma = 0.0, x = 0.0;
    std::string format = "text";
    auto* eval = app.add_subcommand("eval", "Evaluate F (and G) at one point");
    eval->add_option("--nu", nu, "order nu (> -1/2)")->required();
    eval->add_option("--gamma", gamma, "weight gamma (in [0,1])")->required();
    eval->add_option("--x", x, "upper limit x (>= 0)")->required();
    eval->add_option("--format", format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    // bounds
    std::string bound_ids;
    int terms = 5;
    double bnu = 0.0, bgamma = 0.0, bx = 0.0;
    auto* bounds = app.add_subcommand("bounds", "List bounds or evaluate them at a point");
    bounds->add_option("--id", bound_ids, "comma-separated bound ids (default: all)");
    bounds->add_option("--terms", terms, "truncation depth for the sum bound")
        ->check(CLI::PositiveNumber);
    auto* opt_bnu = bounds->add_option("--nu", bnu, "order nu");
    auto* opt_bgamma = bounds->add_option("--gamma", bgamma, "weight gamma");
    auto* opt_bx = bounds->add_option("--x", bx, "upper limit x");
    opt_bnu->needs(opt_bgamma, opt_bx);
    opt_bgamma->needs(opt_bnu, opt_bx);
    opt_bx->needs(opt_bnu, opt_bgamma);
    std::string bformat = "text";
    bounds->add_option("--format", bformat, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    // verify
    std::string config_path, v_bounds, v_nu, v_gamma, v_x, v_format = "json", v_out;
    double slack = 1e-9;
    int v_terms = 5;
    bool invert = false;
    auto* verify = app.add_subcommand("verify", "Run the bound-verification sweep");
    verify->add_option("--config", config_path, "key=value config file");
    verify->add_option("--bounds", v_bounds, "comma-separated bound ids");
    verify->add_option("--nu-grid", v_nu, "comma-separated nu grid");
    verify->add_option("--gamma-grid", v_gamma, "comma-separated gamma grid");
    verify->add_option("--x-grid", v_x, "comma-separated x grid");
    verify->add_option("--slack", slack, "relative slack (default 1e-9)");
    verify->add_option("--terms", v_terms, "truncation depth for the sum bound");
    verify->add_option("--format", v_format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--out", v_out, "report path (default stdout)");
    verify->add_flag("--invert", invert)->group("");  // self-test hook, hidden

    // tables
    int which = 0;
    std::string t_format = "text", t_out;
    auto* tables = app.add_subcommand("tables", "Emit a published relative-error table");
    tables->add_option("which", which, "1 or 2")->required();
    tables->add_option("format", t_format, "text|csv|json");
    tables->add_option("--out", t_out, "output path (default stdout)");

    // limits
    std::string l_format = "text";
    auto* limits = app.add_subcommand("limits", "Run the asymptotic limit checks");
    limits->add_option("--format", l_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) return cmd_eval(nu, gamma, x, format);
        if (bounds->parsed())
            return cmd_bounds(opt_bnu->count() > 0, bnu, bgamma, bx, bound_ids, terms,
                              bformat);
        if (verify->parsed()) {
            SweepConfig cfg = default_sweep_config();
            cfg.rel_slack = slack;
            cfg.truncation.terms = v_terms;
            if (!config_path.empty())
                apply_config_file(config_path, cfg, v_format, v_out, invert);
            if (!v_bounds.empty()) cfg.bound_ids = parse_id_list(v_bounds);
            if (verify->count("--nu-grid")) cfg.nu_grid = parse_number_list(v_nu);
            if (verify->count("--gamma-grid")) cfg.gamma_grid = parse_number_list(v_gamma);
            if (verify->count("--x-grid")) cfg.x_grid = parse_number_list(v_x);
            return cmd_verify(cfg, invert, v_format, v_out);
        }
        if (tables->parsed()) {
            if (which != 1 && which != 2) {
                std::cerr << "tables: which must be 1 or 2\n";
                return 2;
            }
            if (t_format != "text" && t_format != "csv" && t_format != "json") {
                std::cerr << "tables: format must be text, csv or json\n";
                return 2;
            }
            return cmd_tables(which, t_format, t_out);
        }
        if (limits->parsed()) return cmd_limits(l_format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace besselint
