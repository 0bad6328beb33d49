// Command-line driver.  Talks to the engine exclusively through the C API in
// qlmwkb.h; everything else here is argument plumbing and file output.
#include "qlmwkb.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CApiFailure {
    int status;
    std::string message;
};

void ck(int status) {
    if (status != QLMWKB_OK) throw CApiFailure{status, qlmwkb_last_error()};
}

struct SeriesDeleter {
    void operator()(qlmwkb_series* s) const { qlmwkb_series_free(s); }
};
struct PotentialDeleter {
    void operator()(qlmwkb_potential* p) const { qlmwkb_potential_free(p); }
};
struct SolutionDeleter {
    void operator()(qlmwkb_solution* s) const { qlmwkb_solution_free(s); }
};
using SeriesPtr = std::unique_ptr<qlmwkb_series, SeriesDeleter>;
using PotentialPtr = std::unique_ptr<qlmwkb_potential, PotentialDeleter>;
using SolutionPtr = std::unique_ptr<qlmwkb_solution, SolutionDeleter>;

std::string grab_string(int status, char* owned) {
    ck(status);
    std::string out(owned ? owned : "");
    qlmwkb_string_free(owned);
    return out;
}

std::string emit_series(const qlmwkb_series* s, const std::string& format) {
    char* text = nullptr;
    const int status = qlmwkb_series_emit(s, format.c_str(), &text);
    return grab_string(status, text);
}

std::string fmt15(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of a negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

std::string iso_timestamp() {
    const std::time_t t =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Caps {
    int wkb = 12;
    int qlm = 10;
};

Caps order_caps() {
    Caps caps;
    if (const char* env = std::getenv("QLMWKB_MAX_ORDER")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (!end || *end != '\0' || v < 1)
            throw CLI::ValidationError("QLMWKB_MAX_ORDER must be a positive integer");
        caps.wkb = caps.qlm = static_cast<int>(v);
    }
    return caps;
}

// Shared output context: collects artifact paths so the manifest, written
// last, can list every file the command produced.
struct Run {
    std::string command;
    fs::path out_dir;
    json config_echo = json::object();
    std::vector<std::string> artifacts;

    fs::path emit(const std::string& name, const std::string& content) {
        fs::create_directories(out_dir);
        const fs::path path = out_dir / name;
        std::ofstream f(path, std::ios::binary);
        f << content;
        if (content.empty() || content.back() != '\n') f << '\n';
        f.close();
        if (!f) throw CApiFailure{QLMWKB_ERR_IO, "cannot write " + path.string()};
        artifacts.push_back(path.string());
        return path;
    }

    void finish() {
        fs::create_directories(out_dir);
        const fs::path path = out_dir / "manifest.json";
        json doc;
        doc["command"] = command;
        doc["config_echo"] = config_echo;
        doc["artifact_paths"] = artifacts;
        doc["artifact_paths"].push_back(path.string());
        doc["timestamp"] = iso_timestamp();
        doc["engine_version"] = qlmwkb_version();
        std::ofstream f(path, std::ios::binary);
        f << doc.dump(2) << '\n';
    }
};

// Single JSON document; command-line flags win over its entries.
json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream f(path);
    if (!f) throw CLI::ValidationError("cannot read config file " + path);
    json doc;
    try {
        f >> doc;
    } catch (const json::exception& e) {
        throw CLI::ValidationError("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw CLI::ValidationError("config file must hold a JSON object");
    return doc;
}

template <typename T>
void config_fill(const json& cfg, const CLI::Option* opt, const char* key, T& value) {
    if (opt->count() == 0 && cfg.contains(key)) value = cfg.at(key).get<T>();
}

std::map<std::string, double> parse_params(const std::vector<std::string>& raw, const json& cfg) {
    std::map<std::string, double> params;
    if (cfg.contains("param")) {
        for (const auto& [k, v] : cfg.at("param").items()) params[k] = v.get<double>();
    }
    for (const std::string& item : raw) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw CLI::ValidationError("--param expects name=value, got '" + item + "'");
        const std::string name = item.substr(0, eq);
        const std::string text = item.substr(eq + 1);
        char* end = nullptr;
        const double v = std::strtod(text.c_str(), &end);
        if (!end || *end != '\0' || text.empty())
            throw CLI::ValidationError("--param " + name + " has non-numeric value '" + text +
                                       "'");
        params[name] = v;
    }
    return params;
}

PotentialPtr open_potential(const std::string& kind,
                            const std::map<std::string, double>& params) {
    std::vector<const char*> names;
    std::vector<double> values;
    for (const auto& [k, v] : params) {
        names.push_back(k.c_str());
        values.push_back(v);
    }
    qlmwkb_potential* raw = nullptr;
    ck(qlmwkb_potential_create(kind.c_str(), names.data(), values.data(), names.size(), &raw));
    return PotentialPtr(raw);
}

void check_order_cap(int order, int cap, const char* target) {
    if (order > cap)
        throw CLI::ValidationError("order " + std::to_string(order) + " exceeds the " + target +
                                   " order cap " + std::to_string(cap));
    if (order < 1) throw CLI::ValidationError("order must be at least 1");
}

int cmd_expand(Run& run, const json& cfg, std::string target, int iterate, int order,
               std::string format) {
    const Caps caps = order_caps();
    if (target != "wkb" && target != "qlm")
        throw CLI::ValidationError("--target must be wkb or qlm");
    if (format != "text" && format != "json" && format != "latex")
        throw CLI::ValidationError("--format must be text, json, or latex");
    check_order_cap(order, target == "wkb" ? caps.wkb : caps.qlm, target.c_str());
    if (target == "qlm" && iterate < 0)
        throw CLI::ValidationError("--target qlm requires --iterate");

    qlmwkb_series* raw = nullptr;
    if (target == "wkb") {
        ck(qlmwkb_wkb_series(order, &raw));
    } else {
        ck(qlmwkb_qlm_series(iterate, order, &raw));
    }
    SeriesPtr series(raw);
    const std::string body = emit_series(series.get(), format);
    const char* ext = format == "text" ? "txt" : (format == "json" ? "json" : "tex");
    run.emit(std::string("series.") + ext, body);

    run.config_echo = {{"target", target}, {"order", order}, {"format", format}};
    if (target == "qlm") run.config_echo["iterate"] = iterate;
    (void)cfg;
    run.finish();
    return 0;
}

int cmd_compare(Run& run, int iterate, int order) {
    const Caps caps = order_caps();
    check_order_cap(order, std::min(caps.wkb, caps.qlm), "compare");
    if (iterate < 0) throw CLI::ValidationError("--iterate must be nonnegative");

    qlmwkb_series* raw = nullptr;
    ck(qlmwkb_qlm_series(iterate, order, &raw));
    SeriesPtr qlm(raw);
    ck(qlmwkb_wkb_series(order, &raw));
    SeriesPtr wkb(raw);

    int match = 0;
    ck(qlmwkb_series_match_prefix(qlm.get(), wkb.get(), &match));
    const long expected = std::min<long>(1L << std::min(iterate, 30), order);

    const json jq = json::parse(emit_series(qlm.get(), "json"));
    const json jw = json::parse(emit_series(wkb.get(), "json"));

    json per_order = json::array();
    for (int m = 0; m < order; ++m) {
        const bool equal = jq.at("orders").at(m) == jw.at("orders").at(m);
        json row = {{"order", m}, {"equal", equal}};
        if (!equal) {
            row["qlm"] = jq.at("orders").at(m);
            row["wkb"] = jw.at("orders").at(m);
        }
        per_order.push_back(row);
    }
    const json report = {{"iterate", iterate},
                         {"order", order},
                         {"match_prefix", match},
                         {"expected_prefix", expected},
                         {"per_order", per_order}};
    run.emit("compare.json", report.dump(2));
    run.config_echo = {{"iterate", iterate}, {"order", order}};
    run.finish();
    std::printf("match_prefix %d of %d orders (expected %ld)\n", match, order, expected);
    return match == expected ? 0 : 1;
}

int cmd_solve(Run& run, const std::string& kind, const std::map<std::string, double>& params,
              double energy, int iterates, const qlmwkb_solve_config& cfg,
              const std::string& run_name) {
    PotentialPtr pot = open_potential(kind, params);
    qlmwkb_solution* raw = nullptr;
    ck(qlmwkb_solve(pot.get(), energy, iterates, &cfg, &raw));
    SolutionPtr sol(raw);

    int count = 0;
    size_t npts = 0;
    ck(qlmwkb_solution_iterates(sol.get(), &count));
    ck(qlmwkb_solution_grid_points(sol.get(), &npts));

    json grid = json::array();
    json samples = json::array();
    for (int p = 0; p < count; ++p) {
        json re = json::array(), im = json::array();
        for (size_t i = 0; i < npts; ++i) {
            double z, vr, vi;
            ck(qlmwkb_solution_sample(sol.get(), p, i, &z, &vr, &vi));
            if (p == 0) grid.push_back(z);
            re.push_back(vr);
            im.push_back(vi);
        }
        samples.push_back({{"iterate", p}, {"re", re}, {"im", im}});
    }
    json sup_diffs = json::array();
    for (int p = 1; p < count; ++p) {
        double d = 0.0;
        ck(qlmwkb_solution_sup_diff(sol.get(), p, &d));
        sup_diffs.push_back(d);
    }

    // a z_max of 0 requests the automatic outer boundary; echo what was used
    const double z_max_used = grid.empty() ? cfg.z_max : grid.back().get<double>();
    const json config_echo = {{"potential", kind},
                              {"param", params},
                              {"energy", energy},
                              {"iterates", iterates},
                              {"z_min", cfg.z_min},
                              {"z_max", z_max_used},
                              {"grid_points", cfg.grid_points},
                              {"delta", cfg.delta},
                              {"ode_rel_tol", cfg.ode_rel_tol},
                              {"ode_abs_tol", cfg.ode_abs_tol},
                              {"quadrature_order", cfg.quadrature_order}};
    const json doc = {{"config", config_echo},
                      {"grid", grid},
                      {"samples", samples},
                      {"sup_diffs", sup_diffs}};
    run.emit(run_name, doc.dump(2));
    run.config_echo = config_echo;
    run.finish();
    return 0;
}

int cmd_spectrum(Run& run, const std::string& kind, const std::map<std::string, double>& params,
                 int levels, const std::string& format) {
    if (levels < 0) throw CLI::ValidationError("--levels must be nonnegative");
    if (format != "csv" && format != "json")
        throw CLI::ValidationError("--format must be csv or json for spectrum");
    PotentialPtr pot = open_potential(kind, params);

    const char* methods[] = {"exact", "wkb", "qlm"};
    struct Cell {
        double energy = std::nan("");
        int status = 1;
    };
    std::vector<std::array<Cell, 3>> rows(levels + 1);
    for (int n = 0; n <= levels; ++n) {
        for (int m = 0; m < 3; ++m) {
            Cell& c = rows[n][m];
            ck(qlmwkb_level(pot.get(), methods[m], n, &c.energy, &c.status));
        }
    }

    // wide table: one row per level, every method side by side with deviations
    std::string wide = "n,E_exact,E_wkb,E_qlm,abs_err_qlm,abs_err_wkb\n";
    for (int n = 0; n <= levels; ++n) {
        const Cell& ex = rows[n][0];
        const Cell& wk = rows[n][1];
        const Cell& ql = rows[n][2];
        auto cell = [](const Cell& c) { return std::isfinite(c.energy) ? fmt15(c.energy) : ""; };
        wide += std::to_string(n) + "," + cell(ex) + "," + cell(wk) + "," + cell(ql) + ",";
        if (std::isfinite(ex.energy) && std::isfinite(ql.energy))
            wide += fmt15(std::abs(ql.energy - ex.energy));
        wide += ",";
        if (std::isfinite(ex.energy) && std::isfinite(wk.energy))
            wide += fmt15(std::abs(wk.energy - ex.energy));
        wide += "\n";
    }
    run.emit("table.csv", wide);

    // long table: one row per level and method, with the existence flag
    std::string longform = "n,method,energy,status\n";
    for (int n = 0; n <= levels; ++n) {
        for (int m = 0; m < 3; ++m) {
            const Cell& c = rows[n][m];
            longform += std::to_string(n) + "," + methods[m] + ",";
            if (std::isfinite(c.energy)) longform += fmt15(c.energy);
            longform += ",";
            longform += (c.status == 0) ? "ok" : "no_bound_state";
            longform += "\n";
        }
    }
    run.emit("levels.csv", longform);

    if (format == "json") {
        int count = 0;
        ck(qlmwkb_bound_state_count(pot.get(), &count));
        json jrows = json::array();
        for (int n = 0; n <= levels; ++n) {
            json row = {{"n", n}};
            for (int m = 0; m < 3; ++m) {
                const Cell& c = rows[n][m];
                json cell = {{"status", c.status == 0 ? "ok" : "no_bound_state"}};
                if (std::isfinite(c.energy)) cell["energy"] = c.energy;
                row[methods[m]] = cell;
            }
            jrows.push_back(row);
        }
        const bool implicit = (kind == "eckart1d" || kind == "eckart3d");
        const json doc = {
            {"potential", kind},
            {"param", params},
            {"bound_state_count", count < 0 ? json(nullptr) : json(count)},
            {"rows", jrows},
            {"provenance",
             {{"exact", "closed-form"},
              {"wkb", "closed-form"},
              {"qlm", implicit ? "implicit-relation-bisection" : "closed-form"}}}};
        run.emit("spectrum.json", doc.dump(2));
    }

    run.config_echo = {{"potential", kind}, {"param", params}, {"levels", levels},
                       {"format", format}};
    run.finish();
    return 0;
}

int cmd_verify(Run& run, const std::string& suite) {
    char* text = nullptr;
    int ok = 0;
    const int status = qlmwkb_verify(suite.c_str(), &text, &ok);
    const std::string report = grab_string(status, text);
    const json doc = json::parse(report);
    for (const auto& c : doc.at("criteria")) {
        std::printf("[%s] %d %s (%.2fs)%s%s\n", c.at("passed").get<bool>() ? "PASS" : "FAIL",
                    c.at("index").get<int>(), c.at("name").get<std::string>().c_str(),
                    c.at("seconds").get<double>(),
                    c.at("detail").get<std::string>().empty() ? "" : ": ",
                    c.at("detail").get<std::string>().c_str());
    }
    run.emit("verify.json", report);
    run.config_echo = {{"suite", suite}};
    run.finish();
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quasilinearization and semiclassical expansion toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string config_path;
    std::string out_path = ".";
    std::string format;
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--out", out_path, "output directory (a .json path names the run file)");
    auto* format_opt = app.add_option("--format", format, "output format for the subcommand");

    std::string target = "wkb";
    int iterate = -1;
    int order = 8;
    auto* expand = app.add_subcommand("expand", "emit a formal series");
    auto* target_opt = expand->add_option("--target", target, "wkb or qlm");
    auto* iterate_opt_e = expand->add_option("--iterate", iterate, "iterate index for qlm");
    auto* order_opt_e = expand->add_option("--order", order, "number of expansion orders");

    auto* compare = app.add_subcommand("compare", "match an iterate against the base expansion");
    auto* iterate_opt_c = compare->add_option("--iterate", iterate, "iterate index");
    auto* order_opt_c = compare->add_option("--order", order, "number of expansion orders");

    std::string kind;
    std::vector<std::string> raw_params;
    double energy = 0.0;
    int iterates = 4;
    qlmwkb_solve_config scfg;
    qlmwkb_solve_config_default(&scfg);
    scfg.z_max = 0.0;  // auto outer boundary unless overridden
    auto* solve = app.add_subcommand("solve", "run numeric iterates at a fixed energy");
    auto* kind_opt_s = solve->add_option("--potential", kind, "potential kind");
    solve->add_option("--param", raw_params, "potential parameter name=value");
    auto* energy_opt = solve->add_option("--energy", energy, "energy to solve at");
    auto* iterates_opt = solve->add_option("--iterates", iterates, "number of linearized steps");
    auto* zmin_opt = solve->add_option("--z-min", scfg.z_min, "inner grid boundary");
    auto* zmax_opt = solve->add_option("--z-max", scfg.z_max, "outer grid boundary (0 = auto)");
    auto* grid_opt = solve->add_option("--grid-points", scfg.grid_points, "sample count");
    auto* delta_opt = solve->add_option("--delta", scfg.delta, "imaginary path shift");

    int levels = 5;
    auto* spectrum = app.add_subcommand("spectrum", "tabulate energy levels");
    auto* kind_opt_p = spectrum->add_option("--potential", kind, "potential kind");
    spectrum->add_option("--param", raw_params, "potential parameter name=value");
    auto* levels_opt = spectrum->add_option("--levels", levels, "highest level index, inclusive");

    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "run the built-in verification criteria");
    auto* suite_opt = verify->add_option("--suite", suite, "formal, numeric, spectra, or all");

    try {
        app.parse(argc, argv);

        const json cfg = load_config(config_path);
        config_fill(cfg, app.get_option("--out"), "out", out_path);
        config_fill(cfg, format_opt, "format", format);

        Run run;
        run.out_dir = out_path;
        std::string run_name = "run.json";
        // `--out runs/x.json` names the solve artifact itself
        if (fs::path(out_path).extension() == ".json") {
            const fs::path p(out_path);
            run.out_dir = p.parent_path().empty() ? fs::path(".") : p.parent_path();
            run_name = p.filename().string();
        }

        if (expand->parsed()) {
            run.command = "expand";
            config_fill(cfg, target_opt, "target", target);
            config_fill(cfg, iterate_opt_e, "iterate", iterate);
            config_fill(cfg, order_opt_e, "order", order);
            if (format.empty()) format = "text";
            return cmd_expand(run, cfg, target, iterate, order, format);
        }
        if (compare->parsed()) {
            run.command = "compare";
            config_fill(cfg, iterate_opt_c, "iterate", iterate);
            config_fill(cfg, order_opt_c, "order", order);
            if (iterate_opt_c->count() == 0 && !cfg.contains("iterate"))
                throw CLI::ValidationError("compare requires --iterate");
            return cmd_compare(run, iterate, order);
        }
        if (solve->parsed()) {
            run.command = "solve";
            config_fill(cfg, kind_opt_s, "potential", kind);
            config_fill(cfg, energy_opt, "energy", energy);
            config_fill(cfg, iterates_opt, "iterates", iterates);
            config_fill(cfg, zmin_opt, "z_min", scfg.z_min);
            config_fill(cfg, zmax_opt, "z_max", scfg.z_max);
            config_fill(cfg, grid_opt, "grid_points", scfg.grid_points);
            config_fill(cfg, delta_opt, "delta", scfg.delta);
            if (kind.empty()) throw CLI::ValidationError("solve requires --potential");
            if (energy_opt->count() == 0 && !cfg.contains("energy"))
                throw CLI::ValidationError("solve requires --energy");
            return cmd_solve(run, kind, parse_params(raw_params, cfg), energy, iterates, scfg,
                             run_name);
        }
        if (spectrum->parsed()) {
            run.command = "spectrum";
            config_fill(cfg, kind_opt_p, "potential", kind);
            config_fill(cfg, levels_opt, "levels", levels);
            if (format.empty()) format = "csv";
            if (kind.empty()) throw CLI::ValidationError("spectrum requires --potential");
            return cmd_spectrum(run, kind, parse_params(raw_params, cfg), levels, format);
        }
        run.command = "verify";
        config_fill(cfg, suite_opt, "suite", suite);
        return cmd_verify(run, suite);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const CApiFailure& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return e.status == QLMWKB_ERR_USAGE ? 2 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
