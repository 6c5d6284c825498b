#include "exciton/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "exciton/acceptance.hpp"
#include "exciton/cylinder2d.hpp"
#include "exciton/format.hpp"
#include "exciton/potential.hpp"
#include "exciton/report.hpp"
#include "exciton/schrodinger1d.hpp"
#include "exciton/solvable.hpp"
#include "exciton/specfun.hpp"
#include "json_out.hpp"

namespace exciton::cli {

namespace {

using detail::Json;

struct RunConfig {
    double radius = 0.01;
    std::vector<double> radii;
    int levels = 4;
    int grid_n = 0;
    double grid_L = 0.0;
    int mode_cut = 4;
    std::string format = "csv";
    std::string out;
    int threads = 0;
    double x_min = 0.5, x_max = 20.0, x_step = 0.5;
    // validate
    bool list = false;
    std::vector<int> only;
    double digamma_bias = 0.0;

    std::vector<double> radius_list() const { return radii.empty() ? std::vector<double>{radius} : radii; }
    GridPolicy grid() const { return {grid_L, grid_n}; }
};

// A table that serializes either as CSV (header + rows) or as
// {"command": ..., "rows": [{column: value}]}.
class Table {
public:
    Table(std::string command, std::vector<std::string> columns)
        : command_(std::move(command)), columns_(std::move(columns)) {}

    struct Cell {
        bool numeric;
        double num;
        std::string text;
    };
    static Cell num(double v) { return {true, v, {}}; }
    static Cell integer(long v) { return {false, 0.0, std::to_string(v)}; }
    static Cell text(std::string s) { return {false, 0.0, std::move(s)}; }

    void add(std::vector<Cell> row) {
        if (row.size() != columns_.size()) throw std::logic_error("table row width");
        rows_.push_back(std::move(row));
    }

    std::string csv() const {
        std::ostringstream os;
        for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
        os << '\n';
        for (const auto& row : rows_) {
            for (std::size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << (row[i].numeric ? format_double(row[i].num) : row[i].text);
            os << '\n';
        }
        return os.str();
    }

    std::string json() const {
        Json root;
        root["command"] = command_;
        Json rows = Json::array();
        for (const auto& row : rows_) {
            Json jr = Json::object();
            for (std::size_t i = 0; i < row.size(); ++i) {
                const auto& c = row[i];
                if (c.numeric)
                    jr[columns_[i]] = std::isfinite(c.num) ? Json(c.num) : Json(nullptr);
                else if (!c.text.empty() && (std::isdigit(static_cast<unsigned char>(c.text[0])) || c.text[0] == '-'))
                    jr[columns_[i]] = std::stol(c.text);
                else
                    jr[columns_[i]] = c.text;
            }
            rows.push_back(jr);
        }
        root["rows"] = rows;
        return detail::dump_json(root);
    }

private:
    std::string command_;
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

std::string render(const Table& t, const RunConfig& cfg) { return cfg.format == "json" ? t.json() : t.csv(); }

Table veff_table(const RunConfig& cfg) {
    if (!(cfg.x_step > 0.0) || !(cfg.x_max >= cfg.x_min) || !(cfg.x_min > 0.0))
        throw DomainError("x range needs 0 < x-min <= x-max and x-step > 0");
    const Radius r(cfg.radius);
    Table t("veff-table", {"x", "v_eff", "y_comparison", "difference"});
    for (long i = 0;; ++i) {
        const double x = cfg.x_min + i * cfg.x_step;
        if (x > cfg.x_max * (1.0 + 1e-12)) break;
        const double v = v_eff(x, r), y = y_comparison(x, r);
        t.add({Table::num(x), Table::num(v), Table::num(y), Table::num(v - y)});
    }
    return t;
}

Table hc_table(const RunConfig& cfg) {
    Table t("hc-spectrum", {"radius", "index", "k", "parity", "alpha", "energy"});
    for (double rv : cfg.radius_list()) {
        const auto spec = hc_spectrum(Radius(rv), cfg.levels);
        for (std::size_t i = 0; i < spec.size(); ++i)
            t.add({Table::num(rv), Table::integer(long(i) + 1), Table::integer(spec[i].k),
                   Table::text(std::string(to_string(spec[i].parity))), Table::num(spec[i].alpha),
                   Table::num(spec[i].energy)});
    }
    return t;
}

Table heff_table(const RunConfig& cfg) {
    Table t("heff-spectrum", {"radius", "grid_L", "grid_n", "index", "parity", "energy"});
    for (double rv : cfg.radius_list()) {
        const Radius r(rv);
        const Grid1D g = grid_1d(r, cfg.grid());
        const auto spec = heff_spectrum(r, cfg.levels, g);
        for (std::size_t i = 0; i < spec.size(); ++i)
            t.add({Table::num(rv), Table::num(g.half_length()), Table::integer(g.size()), Table::integer(long(i) + 1),
                   Table::text(std::string(to_string(spec[i].parity))), Table::num(spec[i].energy)});
    }
    return t;
}

Table full_table(const RunConfig& cfg) {
    Table t("full-spectrum", {"radius", "mode_cut", "grid_L", "grid_n", "index", "parity", "energy"});
    for (double rv : cfg.radius_list()) {
        const Radius r(rv);
        const Grid1D g = grid_2d(r, cfg.grid(), cfg.levels);
        const auto spec = full_spectrum_merged(r, cfg.mode_cut, g, cfg.levels);
        for (std::size_t i = 0; i < spec.size(); ++i)
            t.add({Table::num(rv), Table::integer(cfg.mode_cut), Table::num(g.half_length()), Table::integer(g.size()),
                   Table::integer(long(i) + 1), Table::text(std::string(to_string(spec[i].parity))),
                   Table::num(spec[i].energy)});
    }
    return t;
}

std::string converge(const RunConfig& cfg) {
    const auto rep = convergence_report(cfg.radius_list(), cfg.levels, cfg.grid(), cfg.mode_cut, cfg.threads);
    return cfg.format == "json" ? report_to_json(rep) : report_to_csv(rep);
}

int validate(const RunConfig& cfg, std::ostream& out) {
    using namespace acceptance;
    if (cfg.list) {
        for (const auto& c : criteria())
            out << c.id << ' ' << c.name << " (" << c.budget_seconds << " s): " << c.statement << '\n';
        return kOk;
    }
    std::vector<int> ids = cfg.only;
    if (ids.empty())
        for (const auto& c : criteria()) ids.push_back(c.id);
    for (int id : ids)
        if (std::none_of(criteria().begin(), criteria().end(), [&](const Criterion& c) { return c.id == id; }))
            throw DomainError("no criterion " + std::to_string(id));
    specfun::testing::set_digamma_bias(cfg.digamma_bias);
    int failed = 0;
    for (int id : ids) {
        const auto o = acceptance::run(id);
        out << format_line(o) << std::endl;
        failed += !o.pass;
    }
    specfun::testing::set_digamma_bias(0.0);
    out << (failed ? std::to_string(failed) + " of " + std::to_string(ids.size()) + " criteria failed"
                   : "all " + std::to_string(ids.size()) + " criteria passed")
        << '\n';
    return failed ? kFailure : kOk;
}

void emit(const std::string& text, const RunConfig& cfg, std::ostream& out) {
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw DomainError("cannot open output file '" + cfg.out + "'");
    f << text;
    if (!f) throw std::runtime_error("write to '" + cfg.out + "' failed");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Exciton-on-a-nanotube spectra: H_C, H_eff and the truncated 2-D operator", "exciton"};
    app.set_config("--config", "", "flat key = value file; command-line flags override it");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1, 1);

    app.add_option("--radius", cfg.radius, "cylinder radius r")->check(CLI::PositiveNumber);
    app.add_option("--radii", cfg.radii, "comma-separated radii (overrides --radius)")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    app.add_option("--levels", cfg.levels, "number of levels")->check(CLI::Range(1, 1000));
    app.add_option("--grid-n", cfg.grid_n, "points per half-line (default: automatic)")->check(CLI::Range(1, 100000000));
    app.add_option("--grid-L", cfg.grid_L, "grid half-length (default: automatic)")->check(CLI::PositiveNumber);
    app.add_option("--mode-cut", cfg.mode_cut, "keep transverse modes |n| <= mode-cut")->check(CLI::Range(0, 64));
    app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out, "output file (default: stdout)");
    app.add_option("--threads", cfg.threads, "worker threads for sweeps (0: all cores)")->check(CLI::Range(0, 1024));
    app.add_option("--x-min", cfg.x_min, "veff-table: first x");
    app.add_option("--x-max", cfg.x_max, "veff-table: last x");
    app.add_option("--x-step", cfg.x_step, "veff-table: x increment");

    std::string command;
    auto sub = [&](const char* name, const char* help) {
        auto* s = app.add_subcommand(name, help);
        s->fallthrough();
        s->callback([&command, name] { command = name; });
        return s;
    };
    sub("veff-table", "V_eff^r, Y_r and their difference on an x grid");
    sub("hc-spectrum", "levels of the solvable operator H_C");
    sub("heff-spectrum", "levels of the effective 1-D operator H_eff^r");
    sub("full-spectrum", "levels of the mode-truncated 2-D operator");
    sub("converge", "radius sweep comparing the three spectra");
    auto* val = sub("validate", "run the acceptance criteria");
    val->add_flag("--list", cfg.list, "list the criteria without running them");
    val->add_option("--criterion", cfg.only, "run only these criteria")->check(CLI::Range(1, 100));
    val->add_option("--inject-digamma-bias", cfg.digamma_bias)->group("");  // fault-injection hook

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (command == "validate") return validate(cfg, out);
        std::string text;
        if (command == "veff-table")
            text = render(veff_table(cfg), cfg);
        else if (command == "hc-spectrum")
            text = render(hc_table(cfg), cfg);
        else if (command == "heff-spectrum")
            text = render(heff_table(cfg), cfg);
        else if (command == "full-spectrum")
            text = render(full_table(cfg), cfg);
        else
            text = converge(cfg);
        emit(text, cfg, out);
        return kOk;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace exciton::cli
