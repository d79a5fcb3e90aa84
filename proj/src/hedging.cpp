// SPDX-License-Identifier: MIT
#include "rapm/hedging.hpp"

#include <cmath>
#include <random>
#include <string>

#include "rapm/error.hpp"
#include "rapm/numeric.hpp"

namespace rapm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class PolarNormal {
public:
    explicit PolarNormal(std::uint64_t seed) : rng_(seed) {}

    double operator()() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        constexpr double scale = 1.0 / 9007199254740992.0;  // 2^-53
        double x, y, s;
        do {
            x = 2.0 * double(rng_() >> 11) * scale - 1.0;
            y = 2.0 * double(rng_() >> 11) * scale - 1.0;
            s = x * x + y * y;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = y * m;
        has_spare_ = true;
        return x * m;
    }

private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace

void PathConfig::validate() const {
    if (!(S0 > 0.0)) throw ValidationError("PathConfig: S0 must be positive");
    if (!(sigma >= 0.0)) throw ValidationError("PathConfig: sigma must be nonnegative");
    if (!(dt > 0.0)) throw ValidationError("PathConfig: dt must be positive");
    if (!(horizon > 0.0)) throw ValidationError("PathConfig: horizon must be positive");
    if (dt > horizon * (1.0 + 1e-12)) throw ValidationError("PathConfig: dt exceeds horizon");
    if (n_paths < 1) throw ValidationError("PathConfig: n_paths must be at least 1");
    if (!std::isfinite(rho)) throw ValidationError("PathConfig: rho must be finite");
}

std::size_t PathConfig::steps() const {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9)));
}

double PathConfig::effective_dt() const { return horizon / double(steps()); }

PathMatrix::PathMatrix(std::size_t n_paths, std::size_t n_steps, double dt, std::vector<double> values)
    : n_paths_(n_paths), n_steps_(n_steps), dt_(dt), values_(std::move(values)) {}

std::vector<double> gbm_path(const PathConfig& c, std::size_t path_index) {
    const std::size_t n = c.steps();
    const double h = c.effective_dt();
    const double drift = (c.rho - 0.5 * c.sigma * c.sigma) * h;
    const double vol = c.sigma * std::sqrt(h);
    PolarNormal normal(splitmix64(c.seed + 0x9e3779b97f4a7c15ULL * (path_index + 1)));
    std::vector<double> path(n + 1);
    path[0] = c.S0;
    double logS = std::log(c.S0);
    for (std::size_t j = 1; j <= n; ++j) {
        logS += drift + vol * normal();
        path[j] = std::exp(logS);
    }
    if (c.sigma == 0.0) {
        for (std::size_t j = 1; j <= n; ++j) path[j] = c.S0 * std::exp(c.rho * h * double(j));
    }
    return path;
}

PathMatrix gbm_paths(const PathConfig& c) {
    c.validate();
    const std::size_t n = c.steps();
    std::vector<double> values;
    values.reserve(c.n_paths * (n + 1));
    for (std::size_t i = 0; i < c.n_paths; ++i) {
        const auto path = gbm_path(c, i);
        values.insert(values.end(), path.begin(), path.end());
    }
    return {c.n_paths, n, c.effective_dt(), std::move(values)};
}

double risk_tc(const ModelParams& p, double S, double gamma, double dt, TcAccounting accounting) {
    if (!(dt > 0.0)) throw ValidationError("risk_tc: dt must be positive");
    const double base = p.C() * p.sigma() * S * std::abs(gamma) / std::sqrt(2.0 * kPi);
    return accounting == TcAccounting::per_unit_time ? base / std::sqrt(dt) : base;
}

double risk_vp(const ModelParams& p, double S, double gamma, double dt) {
    if (!(dt > 0.0)) throw ValidationError("risk_vp: dt must be positive");
    const double s2 = p.sigma2();
    return 0.5 * p.R() * s2 * s2 * S * S * gamma * gamma * dt;
}

RiskBreakdown risk_breakdown(const ModelParams& p, double S, double gamma, double dt) {
    const double tc = risk_tc(p, S, gamma, dt);
    const double vp = risk_vp(p, S, gamma, dt);
    return {tc, vp, tc + vp, dt};
}

Minimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, bool log_scale,
                                double rel_tol) {
    if (!(hi > lo)) throw ValidationError("golden_section_minimize: empty bracket");
    if (log_scale && !(lo > 0.0)) throw ValidationError("golden_section_minimize: log scale needs lo > 0");
    const auto to_x = [&](double y) { return log_scale ? std::exp(y) : y; };
    const auto g = [&](double y) { return f(to_x(y)); };
    const double A = log_scale ? std::log(lo) : lo;
    const double B = log_scale ? std::log(hi) : hi;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = A, b = B;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = g(c), fd = g(d);
    const double tol = rel_tol * std::max(1.0, std::abs(B - A));
    for (int it = 0; it < 500 && (b - a) > tol; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = g(d);
        }
    }
    const double y = 0.5 * (a + b);
    const double edge = 1e-6 * (B - A);
    if (y - A < edge || B - y < edge) throw NumericalError("minimizer at boundary");
    return {to_x(y), g(y)};
}

double empirical_optimal_lag(const ModelParams& p, double S, double gamma) {
    if (gamma == 0.0) throw ValidationError("empirical_optimal_lag: gamma must be nonzero");
    if (!(p.C() > 0.0)) throw ValidationError("empirical_optimal_lag: C must be positive");
    const auto total = [&](double dt) { return risk_tc(p, S, gamma, dt) + risk_vp(p, S, gamma, dt); };
    return golden_section_minimize(total, 1e-10, 1.0).x;
}

HedgeStatistics hedge_simulation(const ModelParams& p, const SurfaceFn& u, const PathConfig& c,
                                 double rebalance_dt) {
    c.validate();
    if (!(rebalance_dt > 0.0)) throw ValidationError("hedge_simulation: rebalance_dt must be positive");
    const std::size_t n = c.steps();
    const double h = c.effective_dt();
    const double ratio = rebalance_dt / h;
    const auto every = static_cast<std::size_t>(std::llround(ratio));
    if (every == 0 || std::abs(ratio - double(every)) > 1e-6 * ratio) {
        throw ValidationError("hedge_simulation: rebalance_dt must be a multiple of the path step");
    }
    const Support& sp = u.support();
    if (sp.t_min > 0.0 || sp.t_max < c.horizon) throw DomainError("hedge_simulation: surface does not cover [0, horizon]");

    const auto delta = [&](double S, double t) {
        if (u.has_jet()) return u.jet(S, t).u_S;
        const double hS = 1e-4 * S;
        return (u(S + hS, t) - u(S - hS, t)) / (2.0 * hS);
    };
    const double growth = std::exp(p.r() * h);
    const double half_cost = 0.5 * p.C();

    HedgeStatistics st;
    st.n_paths = c.n_paths;
    st.errors.resize(c.n_paths);
    st.costs.resize(c.n_paths);
    for (std::size_t k = 0; k < c.n_paths; ++k) {
        const auto path = gbm_path(c, k);
        double d = delta(path[0], 0.0);
        double cash = u(path[0], 0.0) - d * path[0];
        double cost = 0.0;
        std::size_t rebalances = 0;
        for (std::size_t j = 1; j <= n; ++j) {
            cash *= growth;
            if (j % every == 0 && j < n) {
                const double S = path[j];
                const double t = double(j) * h;
                if (!sp.contains(S, t)) throw DomainError("hedge_simulation: path exits the surface support");
                const double nd = delta(S, t);
                const double fee = half_cost * S * std::abs(nd - d);
                cash -= (nd - d) * S + fee;
                cost += fee;
                d = nd;
                ++rebalances;
            }
        }
        const double ST = path[n];
        if (!sp.contains(ST, c.horizon)) throw DomainError("hedge_simulation: path exits the surface support");
        st.errors[k] = cash + d * ST - u(ST, c.horizon);
        st.costs[k] = cost;
        st.rebalances_per_path = rebalances;
    }
    const auto moments = [](const std::vector<double>& x, double& mean, double& var) {
        double m = 0.0;
        for (double v : x) m += v;
        m /= double(x.size());
        double s = 0.0;
        for (double v : x) s += (v - m) * (v - m);
        mean = m;
        var = x.size() > 1 ? s / double(x.size() - 1) : 0.0;
    };
    moments(st.errors, st.mean_error, st.variance_error);
    moments(st.costs, st.mean_cost, st.variance_cost);
    st.risk_adjusted_loss = st.mean_cost + p.R() * st.variance_error / c.S0;
    return st;
}

}  // namespace rapm
