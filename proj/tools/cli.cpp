// SPDX-License-Identifier: MIT
#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rapm/error.hpp"
#include "rapm/family_io.hpp"
#include "rapm/fd_solver.hpp"
#include "rapm/hedging.hpp"
#include "rapm/model.hpp"
#include "rapm/pde.hpp"
#include "rapm/symmetry.hpp"

namespace rapm::cli {

using nlohmann::json;

namespace {

/// A failed check (as opposed to invalid input); maps to exit code 1.
struct CheckFailed {
    json report;
};

struct Globals {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<double> sigma;
    std::optional<double> rate;
    std::optional<double> cost;
    std::optional<double> risk_premium;
    std::string family_path;  // verify
};

json load_config(const Globals& g) {
    json cfg = json::object();
    if (!g.config_path.empty()) {
        std::ifstream in(g.config_path);
        if (!in) throw ValidationError("cannot open config file '" + g.config_path + "'");
        try {
            cfg = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ValidationError("config is not valid JSON: " + std::string(e.what()));
        }
    }
    reject_unknown_keys(cfg,
                        json{{"model", 0}, {"params", 0}, {"family", 0}, {"grid", 0}, {"verify", 0}, {"fd", 0},
                             {"simulate", 0}, {"symmetry", 0}, {"seed", 0}},
                        "config");
    return cfg;
}

/// `defaults` overlaid with `user`; keys outside `defaults` are rejected.
json overlay(json defaults, const json& user, const std::string& context) {
    if (user.is_null()) return defaults;
    reject_unknown_keys(user, defaults, context);
    for (const auto& [k, v] : user.items()) defaults[k] = v;
    return defaults;
}

json resolve_model(const json& cfg, const Globals& g) {
    json m = overlay({{"sigma", 0.3}, {"r", 0.05}, {"C", 0.02}, {"R", 8.0}}, cfg.value("model", json()), "model");
    if (g.sigma) m["sigma"] = *g.sigma;
    if (g.rate) m["r"] = *g.rate;
    if (g.cost) m["C"] = *g.cost;
    if (g.risk_premium) m["R"] = *g.risk_premium;
    return m;
}

std::uint64_t resolve_seed(const json& cfg, const Globals& g) {
    if (g.seed) return *g.seed;
    return cfg.value("seed", std::uint64_t{20240601});
}

json grid_defaults() {
    return {{"S_min", 10.0}, {"S_max", 200.0}, {"t_min", 0.0}, {"t_max", 0.9},
            {"n_S", 20},     {"n_t", 20},      {"spacing", "uniform"}};
}

GridSpec grid_from(const json& j) {
    GridSpec g;
    g.S_min = j.at("S_min");
    g.S_max = j.at("S_max");
    g.t_min = j.at("t_min");
    g.t_max = j.at("t_max");
    g.n_S = j.at("n_S");
    g.n_t = j.at("n_t");
    const std::string sp = j.at("spacing");
    if (sp == "uniform") g.spacing = Spacing::uniform;
    else if (sp == "log") g.spacing = Spacing::log;
    else throw ValidationError("grid.spacing must be 'uniform' or 'log'");
    g.validate();
    return g;
}

json grid_to_json(const GridSpec& g) {
    return {{"S_min", g.S_min}, {"S_max", g.S_max}, {"t_min", g.t_min}, {"t_max", g.t_max},
            {"n_S", g.n_S},     {"n_t", g.n_t},     {"spacing", g.spacing == Spacing::log ? "log" : "uniform"}};
}

void write_file(const Globals& g, const std::string& name, const std::string& content) {
    if (g.out_dir.empty()) return;
    std::filesystem::create_directories(g.out_dir);
    std::ofstream f(std::filesystem::path(g.out_dir) / name);
    if (!f) throw ValidationError("cannot write '" + name + "' in '" + g.out_dir + "'");
    f << content;
}

/// S interval on which S e^(-kappa t) stays inside [z_lo, z_hi] for all t in [t_min, t_max].
Support parametric_support(std::pair<double, double> z, double kappa, double t_min, double t_max) {
    const double e0 = std::exp(kappa * t_min);
    const double e1 = std::exp(kappa * t_max);
    const double S_lo = z.first * std::max(e0, e1);
    const double S_hi = z.second * std::min(e0, e1);
    if (!(S_hi > S_lo)) throw DomainError("grid: no S interval maps inside the curve for this t range");
    const double span = 0.05 * std::log(S_hi / S_lo);
    return {S_lo * std::exp(span), S_hi * std::exp(-span), t_min, t_max};
}

/// Grid for a family surface. Curve-based families get S bounds from the curve unless given, and
/// a t window that uses half of the curve's ln z span unless given.
GridSpec family_grid(const FamilyHandle& fam, const json& user_grid) {
    json grid_cfg = overlay(grid_defaults(), user_grid, "grid");
    const auto given = [&](const char* a, const char* b) {
        return user_grid.is_object() && (user_grid.contains(a) || user_grid.contains(b));
    };
    std::optional<std::pair<double, double>> z;
    double kappa = 0.0;
    if (const auto* sf = std::get_if<SpecialFamily>(&fam.family)) {
        z = sf->interpolant.z_range();
        kappa = sf->params.r() - 1.0;
    } else if (const auto* h = std::get_if<H3Family>(&fam.family)) {
        z = h->evaluator.z_range();
        kappa = h->kappa();
    } else if (const auto* h0 = std::get_if<H30Family>(&fam.family)) {
        z = h0->evaluator.z_range();
        kappa = h0->kappa();
    }
    if (z) {
        if (!given("t_min", "t_max") && kappa != 0.0) {
            const double window = 0.5 * std::log(z->second / z->first) / std::abs(kappa);
            grid_cfg["t_max"] = grid_cfg.at("t_min").get<double>() + std::min(0.9, window);
        }
        if (!given("S_min", "S_max")) {
            const Support s = parametric_support(*z, kappa, grid_cfg.at("t_min"), grid_cfg.at("t_max"));
            grid_cfg["S_min"] = s.S_min;
            grid_cfg["S_max"] = s.S_max;
        }
    }
    return grid_from(grid_cfg);
}

json residual_summary(const ResidualReport& rep, double tol_rel) {
    const double allowed = tol_rel * (1.0 + rep.max_abs_u);
    json j{{"max_abs", rep.max_abs},
           {"max_abs_u", rep.max_abs_u},
           {"tolerance", allowed},
           {"pass", rep.max_abs <= allowed},
           {"parabolicity_violations", rep.parabolicity_violations},
           {"derivatives", rep.finite_differences ? "finite_differences" : "analytic"}};
    if (rep.fd_error_estimate) j["fd_error_estimate"] = *rep.fd_error_estimate;
    return j;
}

// ---------------------------------------------------------------- commands

json cmd_params(const json& cfg, const Globals& g) {
    const json model = resolve_model(cfg, g);
    const json prm = overlay({{"T", 1.0}, {"S", nullptr}, {"gamma", nullptr}}, cfg.value("params", json()), "params");
    const ModelParams p = model_params_from_json(model);
    const double T = prm["T"];
    const Admissibility a = admissible(p, T);
    json res{{"mu", p.mu()},
             {"c_over_r", p.C() / p.R()},
             {"sigma2_T", p.sigma2() * T},
             {"cr_product", p.C() * p.R()},
             {"c_over_r_ok", a.c_over_r_ok},
             {"cr_product_ok", a.cr_product_ok},
             {"admissible", a.ok()},
             {"t_star", a.t_star ? json(*a.t_star) : json(nullptr)}};
    if (!prm["S"].is_null() && !prm["gamma"].is_null() && p.C() > 0.0) {
        const double S = prm["S"], gamma = prm["gamma"];
        res["optimal_time_lag"] = optimal_time_lag(p, S, gamma);
        res["parabolicity_margin"] = parabolicity_margin(p.mu(), S, gamma);
    }
    json out{{"command", "params"}, {"config", {{"model", model}, {"params", prm}}}, {"result", res}};
    if (!a.ok()) throw CheckFailed{out};
    return out;
}

json cmd_solve_invariant(const json& cfg, const Globals& g) {
    const json model = resolve_model(cfg, g);
    const ModelParams p = model_params_from_json(model);
    if (!cfg.contains("family")) throw ValidationError("solve-invariant: config needs a 'family' section");
    const FamilyHandle fam = build_family(p, cfg.at("family"));
    const GridSpec grid = family_grid(fam, cfg.value("grid", json()));
    const json ver = overlay({{"tolerance", 1e-8}}, cfg.value("verify", json()), "verify");
    const SurfaceFn surf = family_surface(fam, grid.support());
    const ResidualReport rep = residual_norm(surf, p, grid);

    const json fam_json = family_to_json(fam);
    write_file(g, "surface.csv", to_csv(rep));
    write_file(g, "family.json", fam_json.dump(2) + "\n");
    if (auto c = family_curve(fam)) write_file(g, "curve.csv", to_csv(*c));
    return {{"command", "solve-invariant"},
            {"config", {{"model", model}, {"family", fam.spec}, {"grid", grid_to_json(grid)}, {"verify", ver}}},
            {"result", {{"family", fam_json["derived"]}, {"residual", residual_summary(rep, ver["tolerance"])}}}};
}

json cmd_verify(const json& cfg, const Globals& g) {
    FamilyHandle fam = [&] {
        if (!g.family_path.empty()) {
            std::ifstream in(g.family_path);
            if (!in) throw ValidationError("cannot open family file '" + g.family_path + "'");
            json j;
            try {
                j = json::parse(in);
            } catch (const json::parse_error& e) {
                throw ValidationError("family file is not valid JSON: " + std::string(e.what()));
            }
            return family_from_json(j);
        }
        if (!cfg.contains("family")) throw ValidationError("verify: give --family <file> or a 'family' config section");
        return build_family(model_params_from_json(resolve_model(cfg, g)), cfg.at("family"));
    }();
    const ModelParams& p = fam.params();
    const GridSpec grid = family_grid(fam, cfg.value("grid", json()));
    const json ver = overlay({{"tolerance", 1e-8}}, cfg.value("verify", json()), "verify");
    const ResidualReport rep = residual_norm(family_surface(fam, grid.support()), p, grid);
    const json summary = residual_summary(rep, ver["tolerance"]);
    json checks = json::array();
    checks.push_back({{"invariant", "rapm_residual"}, {"pass", summary["pass"]}, {"value", rep.max_abs}});
    checks.push_back({{"invariant", "parabolicity"},
                      {"pass", rep.parabolicity_violations == 0},
                      {"value", rep.parabolicity_violations}});
    json out{{"command", "verify"},
             {"config", {{"model", p}, {"family", fam.spec}, {"grid", grid_to_json(grid)}, {"verify", ver}}},
             {"result", {{"residual", summary}, {"checks", checks}}}};
    write_file(g, "verify.csv", to_csv(rep));
    if (!summary["pass"].get<bool>()) throw CheckFailed{out};
    return out;
}

json cmd_fd_solve(const json& cfg, const Globals& g) {
    const json model = resolve_model(cfg, g);
    const ModelParams p = model_params_from_json(model);
    json fd = overlay({{"terminal", {{"type", "call"}, {"strike", 100.0}, {"maturity", 1.0}}},
                       {"theta", 0.5},
                       {"picard_max_iters", 50},
                       {"picard_tol", 1e-12}},
                      cfg.value("fd", json()), "fd");
    json grid_cfg = overlay({{"S_min", 50.0}, {"S_max", 150.0}, {"t_min", 0.0}, {"t_max", 0.5}, {"n_S", 201},
                             {"n_t", 201}, {"spacing", "uniform"}},
                            cfg.value("grid", json()), "grid");
    const GridSpec grid = grid_from(grid_cfg);
    FdScheme scheme;
    scheme.theta = fd["theta"];
    scheme.picard_max_iters = fd["picard_max_iters"];
    scheme.picard_tol = fd["picard_tol"];

    const json& term = fd["terminal"];
    const std::string type = term.at("type");
    std::function<double(double)> terminal;
    FdBoundary bnd;
    std::optional<SurfaceFn> oracle;
    if (type == "call") {
        reject_unknown_keys(term, json{{"type", 0}, {"strike", 0}, {"maturity", 0}}, "fd.terminal");
        const double E = term.value("strike", 100.0);
        const double T = term.value("maturity", 1.0);
        if (!(grid.t_max < T)) throw ValidationError("fd.terminal: grid t_max must precede the maturity");
        const double sig = p.sigma();
        const double r = p.r();
        const double t1 = grid.t_max;
        // Smooth terminal data at t_max < T: the frictionless price.
        terminal = [=](double S) { return bs_closed_form(sig, r, E, T - t1, S); };
        bnd.lower = [=](double t) { return bs_closed_form(sig, r, E, T - t, grid.S_min); };
        bnd.upper = [=](double t) { return bs_closed_form(sig, r, E, T - t, grid.S_max); };
        if (p.mu() == 0.0) oracle = bs_call_surface(sig, r, E, T, grid.support());
    } else if (type == "payoff") {
        reject_unknown_keys(term, json{{"type", 0}, {"strike", 0}}, "fd.terminal");
        const double E = term.value("strike", 100.0);
        const double r = p.r();
        const double t1 = grid.t_max;
        terminal = [=](double S) { return std::max(S - E, 0.0); };
        bnd.lower = [=](double t) { return std::max(grid.S_min - E * std::exp(-r * (t1 - t)), 0.0); };
        bnd.upper = [=](double t) { return std::max(grid.S_max - E * std::exp(-r * (t1 - t)), 0.0); };
    } else if (type == "family") {
        reject_unknown_keys(term, json{{"type", 0}, {"family", 0}}, "fd.terminal");
        const FamilyHandle fam = build_family(p, term.at("family"));
        const SurfaceFn surf = family_surface(fam, grid.support());
        const double t1 = grid.t_max;
        terminal = [surf, t1](double S) { return surf(S, t1); };
        bnd.lower = [surf, s = grid.S_min](double t) { return surf(s, t); };
        bnd.upper = [surf, s = grid.S_max](double t) { return surf(s, t); };
        oracle = surf;
    } else {
        throw ValidationError("fd.terminal.type must be 'call', 'payoff' or 'family'");
    }

    json out{{"command", "fd-solve"}, {"config", {{"model", model}, {"fd", fd}, {"grid", grid_to_json(grid)}}}};
    try {
        const FdSolution sol = fd_solve(p, terminal, bnd, grid, scheme);
        json res{{"picard_iterations_max", sol.max_picard_iterations()}};
        std::ostringstream csv;
        csv << "S,t,u\n";
        double max_err = 0.0;
        char buf[96];
        for (std::size_t j = 0; j < sol.t().size(); ++j) {
            for (std::size_t i = 0; i < sol.S().size(); ++i) {
                const double u = sol.at(i, j);
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", sol.S()[i], sol.t()[j], u);
                csv << buf;
                if (oracle) max_err = std::max(max_err, std::abs(u - (*oracle)(sol.S()[i], sol.t()[j])));
            }
        }
        if (oracle) res["max_error_vs_oracle"] = max_err;
        else res["max_error_vs_oracle"] = nullptr;
        write_file(g, "fd_surface.csv", csv.str());
        out["result"] = res;
        return out;
    } catch (const ParabolicityLost& e) {
        out["result"] = {{"error", "parabolicity lost"}, {"S", e.S()}, {"t", e.t()}, {"message", e.what()}};
        throw std::make_pair(out, 2);
    }
}

json cmd_simulate(const json& cfg, const Globals& g) {
    const json model = resolve_model(cfg, g);
    const ModelParams p = model_params_from_json(model);
    json sim = overlay({{"S0", 100.0},
                        {"strike", 100.0},
                        {"maturity", 1.0},
                        {"rho", nullptr},
                        {"n_paths", 10000},
                        {"horizon_lags", 8.0},
                        {"steps_per_lag", 4},
                        {"rebalance_factors", {0.25, 1.0, 4.0}},
                        {"write_paths", false}},
                       cfg.value("simulate", json()), "simulate");
    const double S0 = sim["S0"], E = sim["strike"], T = sim["maturity"];
    const double gamma0 = bs_call_gamma(p.sigma(), p.r(), E, T, S0);
    const double lag = optimal_time_lag(p, S0, gamma0);
    const double horizon = double(sim["horizon_lags"]) * lag;
    if (!(horizon < T)) throw ValidationError("simulate: horizon must end before maturity");
    PathConfig pc;
    pc.S0 = S0;
    pc.rho = sim["rho"].is_null() ? p.r() : sim["rho"].get<double>();
    pc.sigma = p.sigma();
    pc.dt = lag / double(sim["steps_per_lag"]);
    pc.horizon = horizon;
    pc.seed = resolve_seed(cfg, g);
    pc.n_paths = sim["n_paths"];
    sim["rho"] = pc.rho;
    const SurfaceFn u = bs_call_surface(p.sigma(), p.r(), E, T, {1e-6 * S0, 1e6 * S0, 0.0, horizon});

    json runs = json::array();
    std::ostringstream paths_csv;
    paths_csv << "rebalance_dt,path,error,cost\n";
    for (const double f : sim["rebalance_factors"]) {
        const auto st = hedge_simulation(p, u, pc, f * lag);
        runs.push_back({{"rebalance_factor", f},
                        {"rebalance_dt", f * lag},
                        {"rebalances_per_path", st.rebalances_per_path},
                        {"mean_error", st.mean_error},
                        {"variance_error", st.variance_error},
                        {"mean_cost", st.mean_cost},
                        {"risk_adjusted_loss", st.risk_adjusted_loss}});
        if (sim["write_paths"].get<bool>()) {
            char buf[128];
            for (std::size_t k = 0; k < st.errors.size(); ++k) {
                std::snprintf(buf, sizeof buf, "%.17g,%zu,%.17g,%.17g\n", f * lag, k, st.errors[k], st.costs[k]);
                paths_csv << buf;
            }
        }
    }
    if (sim["write_paths"].get<bool>()) write_file(g, "paths.csv", paths_csv.str());
    return {{"command", "simulate"},
            {"config", {{"model", model}, {"simulate", sim}, {"seed", pc.seed}, {"rng", kRngAlgorithm}}},
            {"result", {{"gamma0", gamma0}, {"optimal_time_lag", lag}, {"horizon", horizon},
                        {"path_dt", pc.effective_dt()}, {"runs", runs}}}};
}

json cmd_symmetry_table(const Globals& g) {
    const double r = g.rate.value_or(0.05);
    const Basis U = basis_U(r);
    json brackets = json::object();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            brackets["[U" + std::to_string(i + 1) + ",U" + std::to_string(j + 1) + "]"] =
                commutator(U[i], U[j]).to_string();
        }
    }
    return {{"command", "symmetry table"},
            {"config", {{"rate", r}}},
            {"result",
             {{"generators", {U[0].to_string(), U[1].to_string(), U[2].to_string(), U[3].to_string()}},
              {"U_table", commutator_table(r, false)},
              {"e_table", commutator_table(r, true)},
              {"brackets", brackets}}}};
}

json cmd_symmetry_catalog(const Globals& g) {
    const double r = g.rate.value_or(0.05);
    json entries = json::array();
    const SubalgebraParams q{0.7, 1.0, 0.4};
    for (const auto& e : subalgebra_catalog(r)) {
        entries.push_back({{"id", e.id},
                           {"dimension", e.dimension},
                           {"generators", e.generators},
                           {"parameters", e.parameters},
                           {"closure_defect_sample", closure_defect(e, q, r)}});
    }
    return {{"command", "symmetry catalog"}, {"config", {{"rate", r}}}, {"result", entries}};
}

json cmd_symmetry_check_flow(const json& cfg, const Globals& g) {
    const json model = resolve_model(cfg, g);
    const ModelParams p = model_params_from_json(model);
    if (!cfg.contains("family")) throw ValidationError("symmetry check-flow: config needs a 'family' section");
    const FamilyHandle fam = build_family(p, cfg.at("family"));
    const GridSpec grid = family_grid(fam, cfg.value("grid", json()));
    const json sym = overlay({{"generator", "U2"}, {"lambda", 0.5}, {"tolerance", 1e-9}},
                             cfg.value("symmetry", json()), "symmetry");
    const Generator gen = generator_from_string(sym["generator"]);
    // The base surface must cover the grid and, for U1/U3, the grid's pre-image; a relative
    // pad absorbs rounding in the round trip.
    const double lam = sym["lambda"];
    Support sup = grid.support();
    if (gen == Generator::U1) {
        sup.S_min = std::min(sup.S_min, sup.S_min * std::exp(-lam)) * (1.0 - 1e-12);
        sup.S_max = std::max(sup.S_max, sup.S_max * std::exp(-lam)) * (1.0 + 1e-12);
    } else if (gen == Generator::U3) {
        const double pad = 1e-12 * std::max(1.0, std::abs(sup.t_max) + std::abs(lam));
        sup.t_min = std::min(sup.t_min, sup.t_min - lam) - pad;
        sup.t_max = std::max(sup.t_max, sup.t_max - lam) + pad;
    }
    const SurfaceFn surf = family_surface(fam, sup);
    const FlowReport rep = preserves_solutions(gen, lam, surf, p, grid, sym["tolerance"]);
    json out{{"command", "symmetry check-flow"},
             {"config", {{"model", model}, {"family", fam.spec}, {"grid", grid_to_json(grid)}, {"symmetry", sym}}},
             {"result", {{"base_max", rep.base_max}, {"flowed_max", rep.flowed_max}, {"pass", rep.pass}}}};
    if (!rep.pass) throw CheckFailed{out};
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Risk-adjusted pricing: invariant solutions, verification, finite differences, hedging"};
    app.require_subcommand(1);
    Globals g;
    const auto add_globals = [&g](CLI::App* a) {
        a->add_option("--config", g.config_path, "JSON configuration file");
        a->add_option("--out", g.out_dir, "Directory for CSV/JSON artifacts");
        a->add_option("--seed", g.seed, "Random seed (overrides config)");
        a->add_option("--sigma", g.sigma, "Volatility");
        a->add_option("--rate", g.rate, "Risk-free rate r");
        a->add_option("--cost", g.cost, "Round-trip transaction cost C");
        a->add_option("--risk-premium", g.risk_premium, "Risk premium coefficient R");
    };
    add_globals(&app);
    app.fallthrough();
    auto* params = app.add_subcommand("params", "Admissibility, switching time and optimal revision interval");
    auto* solve = app.add_subcommand("solve-invariant", "Build an invariant family and export its surface");
    auto* verify = app.add_subcommand("verify", "Check a family against the RAPM equation");
    verify->add_option("--family", g.family_path, "family.json written by solve-invariant");
    auto* fds = app.add_subcommand("fd-solve", "Finite-difference solve with Dirichlet data");
    auto* sim = app.add_subcommand("simulate", "Monte Carlo delta hedging");
    auto* sym = app.add_subcommand("symmetry", "Lie algebra of point symmetries");
    sym->require_subcommand(1);
    auto* table = sym->add_subcommand("table", "Commutator tables of U1..U4 and e1..e4");
    auto* catalog = sym->add_subcommand("catalog", "Optimal system of subalgebras with closure checks");
    auto* check_flow = sym->add_subcommand("check-flow", "Flow a family along a generator and re-verify");
    for (auto* s : {params, solve, verify, fds, sim, sym, table, catalog, check_flow}) s->fallthrough();

    std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(rev.begin(), rev.end());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    const auto emit = [&](const json& j) { out << j.dump(2) << "\n"; };
    try {
        const json cfg = load_config(g);
        json result;
        if (*params) result = cmd_params(cfg, g);
        else if (*solve) result = cmd_solve_invariant(cfg, g);
        else if (*verify) result = cmd_verify(cfg, g);
        else if (*fds) result = cmd_fd_solve(cfg, g);
        else if (*sim) result = cmd_simulate(cfg, g);
        else if (*table) result = cmd_symmetry_table(g);
        else if (*catalog) result = cmd_symmetry_catalog(g);
        else result = cmd_symmetry_check_flow(cfg, g);
        emit(result);
        write_file(g, "report.json", result.dump(2) + "\n");
        return 0;
    } catch (const CheckFailed& f) {
        emit(f.report);
        write_file(g, "report.json", f.report.dump(2) + "\n");
        return 1;
    } catch (const std::pair<json, int>& f) {
        emit(f.first);
        err << "error: " << f.first["result"].value("message", "") << "\n";
        return f.second;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::validation ? 1 : 2;
    } catch (const json::exception& e) {
        err << "error: configuration: " << e.what() << "\n";
        return 1;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace rapm::cli
