#include "fracvar/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "fracvar/errors.hpp"
#include "fracvar/residuals.hpp"
#include "fracvar/version.hpp"

namespace fracvar {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const char* const kParamKeys[] = {"a", "b", "alpha", "beta", "gamma", "lambda", "ya", "yb"};

bool is_param_key(const std::string& key) {
    for (const char* k : kParamKeys) {
        if (key == k) return true;
    }
    return false;
}

// Round-trip-safe decimal rendering for the CSV outputs.
std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double as_number(const json& v, const std::string& key) {
    if (!v.is_number()) {
        throw ConfigError("config key '" + key + "' must be a number");
    }
    return v.get<double>();
}

int as_int(const json& v, const std::string& key) {
    const double x = as_number(v, key);
    if (x != std::nearbyint(x)) {
        throw ConfigError("config key '" + key + "' must be an integer");
    }
    return static_cast<int>(x);
}

void assign_solver_key(SolveOptions& opts, const std::string& key, double value, bool* matched) {
    *matched = true;
    if (key == "max_iters") {
        if (value != std::nearbyint(value)) throw ConfigError("max_iters must be an integer");
        opts.max_iters = static_cast<int>(value);
    } else if (key == "grad_tol") {
        opts.grad_tol = value;
    } else if (key == "step_init") {
        opts.step_init = value;
    } else if (key == "armijo_c") {
        opts.armijo_c = value;
    } else if (key == "backtrack_factor") {
        opts.backtrack_factor = value;
    } else {
        *matched = false;
    }
}

json config_echo(const RunConfig& config) {
    json echo;
    echo["problem"] = config.problem;
    echo["n"] = config.n;
    echo["seed"] = config.seed;
    echo["params"] = json::object();
    for (const auto& [key, value] : config.params) echo["params"][key] = value;
    json solver;
    solver["max_iters"] = config.solver.max_iters;
    solver["grad_tol"] = config.solver.grad_tol;
    solver["step_init"] = config.solver.step_init;
    solver["armijo_c"] = config.solver.armijo_c;
    solver["backtrack_factor"] = config.solver.backtrack_factor;
    echo["solver"] = solver;
    if (config.fix_left) echo["fix_left"] = *config.fix_left;
    if (config.fix_right) echo["fix_right"] = *config.fix_right;
    if (config.free_left) echo["free_left"] = true;
    if (config.free_right) echo["free_right"] = true;
    if (!config.reference.empty()) echo["reference"] = config.reference;
    if (!config.grids.empty()) echo["grids"] = config.grids;
    return echo;
}

Problem build_problem(const RunConfig& config) {
    if (config.problem.empty()) {
        throw ConfigError("no problem selected (set 'problem')");
    }
    if (config.n < 2) {
        throw ConfigError("grid size n must be at least 2 (set 'n')");
    }
    std::map<std::string, double> params = config.params;
    params["n"] = static_cast<double>(config.n);
    Problem p = builtin_problem(config.problem, params);
    if (config.fix_left && config.free_left) {
        throw ConfigError("left boundary cannot be both fixed and free");
    }
    if (config.fix_right && config.free_right) {
        throw ConfigError("right boundary cannot be both fixed and free");
    }
    if (config.fix_left) p.boundary.left = BoundaryCondition::fixed(*config.fix_left);
    if (config.free_left) p.boundary.left = BoundaryCondition::free();
    if (config.fix_right) p.boundary.right = BoundaryCondition::fixed(*config.fix_right);
    if (config.free_right) p.boundary.right = BoundaryCondition::free();
    return p;
}

SampledFunction reference_function(const RunConfig& config, const Grid& grid) {
    if (config.reference != "classical_ybar") {
        throw ConfigError("unknown reference '" + config.reference + "'"
                          " (supported: classical_ybar)");
    }
    const auto gamma_it = config.params.find("gamma");
    const auto lambda_it = config.params.find("lambda");
    if (gamma_it == config.params.end() || lambda_it == config.params.end()) {
        throw ConfigError("reference classical_ybar needs gamma and lambda");
    }
    return classical_quadratic_minimizer(gamma_it->second, lambda_it->second, grid);
}

void ensure_output_dir(const RunConfig& config) {
    if (config.output_dir.empty()) {
        throw ConfigError("no output directory configured (set 'out')");
    }
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) {
        throw ConfigError("cannot create output directory '" + config.output_dir +
                          "': " + ec.message());
    }
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ConfigError("cannot open '" + path.string() + "' for writing");
    }
    out << content;
}

} // namespace

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError("config file must hold a flat JSON object");
    }

    RunConfig config;
    for (const auto& [key, value] : root.items()) {
        if (key == "problem") {
            if (!value.is_string()) throw ConfigError("config key 'problem' must be a string");
            config.problem = value.get<std::string>();
        } else if (key == "n") {
            config.n = as_int(value, key);
        } else if (key == "seed") {
            const int s = as_int(value, key);
            if (s < 0) throw ConfigError("config key 'seed' must be non-negative");
            config.seed = static_cast<std::uint64_t>(s);
        } else if (key == "out") {
            if (!value.is_string()) throw ConfigError("config key 'out' must be a string");
            config.output_dir = value.get<std::string>();
        } else if (key == "grids") {
            if (!value.is_array()) throw ConfigError("config key 'grids' must be an array");
            for (const auto& item : value) config.grids.push_back(as_int(item, "grids"));
        } else if (key == "reference") {
            if (!value.is_string()) throw ConfigError("config key 'reference' must be a string");
            config.reference = value.get<std::string>();
        } else if (key == "free_left") {
            if (!value.is_boolean()) throw ConfigError("config key 'free_left' must be a boolean");
            config.free_left = value.get<bool>();
        } else if (key == "free_right") {
            if (!value.is_boolean()) throw ConfigError("config key 'free_right' must be a boolean");
            config.free_right = value.get<bool>();
        } else if (key == "fix_left") {
            config.fix_left = as_number(value, key);
        } else if (key == "fix_right") {
            config.fix_right = as_number(value, key);
        } else if (is_param_key(key)) {
            config.params[key] = as_number(value, key);
        } else {
            bool matched = false;
            if (value.is_number()) {
                assign_solver_key(config.solver, key, value.get<double>(), &matched);
            }
            if (!matched) {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
    }
    return config;
}

std::vector<int> parse_grid_list(const std::string& text) {
    std::vector<int> grids;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        int value = 0;
        try {
            value = std::stoi(item, &pos);
        } catch (const std::exception&) {
            throw ConfigError("grid list entry '" + item + "' is not an integer");
        }
        if (pos != item.size()) {
            throw ConfigError("grid list entry '" + item + "' is not an integer");
        }
        grids.push_back(value);
    }
    return grids;
}

void apply_set_override(RunConfig& config, const std::string& spec) {
    const std::size_t eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("--set expects key=value, got '" + spec + "'");
    }
    const std::string key = spec.substr(0, eq);
    const std::string text = spec.substr(eq + 1);

    if (key == "reference") {
        config.reference = text;
        return;
    }

    double value = 0.0;
    std::size_t pos = 0;
    try {
        value = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw ConfigError("--set value for '" + key + "' is not a number: '" + text + "'");
    }
    if (pos != text.size()) {
        throw ConfigError("--set value for '" + key + "' is not a number: '" + text + "'");
    }

    if (is_param_key(key)) {
        config.params[key] = value;
        return;
    }
    if (key == "fix_left") {
        config.fix_left = value;
        return;
    }
    if (key == "fix_right") {
        config.fix_right = value;
        return;
    }
    if (key == "free_left") {
        config.free_left = value != 0.0;
        return;
    }
    if (key == "free_right") {
        config.free_right = value != 0.0;
        return;
    }
    bool matched = false;
    assign_solver_key(config.solver, key, value, &matched);
    if (!matched) {
        throw ConfigError("unknown --set key '" + key + "'");
    }
}

int run_solve(const RunConfig& config, std::ostream& diag) {
    Problem problem = build_problem(config);

    SolveOptions opts = config.solver;
    opts.seed = config.seed;

    SolveReport report = solve_direct(problem, opts);
    const SampledFunction el = euler_lagrange_residual(problem, report.minimizer);

    ensure_output_dir(config);
    const fs::path out_dir(config.output_dir);

    // solution.csv: one row per node; el_residual is blank on nodes the
    // trimmed norm excludes.
    std::string csv = "x,y,el_residual\n";
    for (int i = 0; i <= problem.grid.n(); ++i) {
        csv += format_double(problem.grid.node(i));
        csv += ',';
        csv += format_double(report.minimizer[i]);
        csv += ',';
        if (residual_node_admissible(el, i)) {
            csv += format_double(el[i]);
        }
        csv += '\n';
    }
    write_text_file(out_dir / "solution.csv", csv);

    json rep;
    rep["j_value"] = report.j_value;
    rep["grad_norm"] = report.grad_norm;
    rep["el_norm"] = report.el_residual_norm;
    if (report.nbc_left_residual) rep["nbc_left"] = *report.nbc_left_residual;
    if (report.nbc_right_residual) rep["nbc_right"] = *report.nbc_right_residual;
    rep["iterations"] = report.iterations;
    rep["converged"] = report.converged;
    rep["config"] = config_echo(config);
    rep["version"] = kVersion;
    write_text_file(out_dir / "report.json", rep.dump(2) + "\n");

    if (!report.converged) {
        diag << "solver did not converge within " << opts.max_iters
             << " iterations (grad_norm=" << report.grad_norm << ")\n";
        return 2;
    }
    return 0;
}

int run_convergence(const RunConfig& config, std::ostream& diag) {
    if (config.grids.empty()) {
        throw ConfigError("convergence mode needs a non-empty grid list");
    }
    if (config.fix_left || config.fix_right || config.free_left || config.free_right) {
        throw ConfigError("boundary overrides are not supported in convergence mode");
    }
    if (config.problem.empty()) {
        throw ConfigError("no problem selected (set 'problem')");
    }

    SolveOptions opts = config.solver;
    opts.seed = config.seed;
    const ConvergenceTable table = convergence_study(config.problem, config.params,
                                                     config.grids, opts);

    ensure_output_dir(config);

    std::string csv = "n,j_value,el_norm,nbc_left,nbc_right,max_dev_from_reference\n";
    bool all_converged = true;
    for (const ConvergenceRow& row : table.rows) {
        all_converged = all_converged && row.converged;
        csv += std::to_string(row.n);
        csv += ',';
        csv += format_double(row.j_value);
        csv += ',';
        csv += format_double(row.el_norm);
        csv += ',';
        if (row.nbc_left) csv += format_double(*row.nbc_left);
        csv += ',';
        if (row.nbc_right) csv += format_double(*row.nbc_right);
        csv += ',';
        if (!config.reference.empty() && config.reference != "none") {
            const SampledFunction ref = reference_function(config, row.minimizer.grid);
            double dev = 0.0;
            for (int i = 0; i <= row.minimizer.grid.n(); ++i) {
                dev = std::max(dev, std::abs(row.minimizer[i] - ref[i]));
            }
            csv += format_double(dev);
        }
        csv += '\n';
    }
    write_text_file(fs::path(config.output_dir) / "convergence.csv", csv);

    if (!all_converged) {
        diag << "at least one convergence row did not converge\n";
        return 2;
    }
    return 0;
}

} // namespace fracvar
