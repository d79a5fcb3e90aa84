// SPDX-License-Identifier: MIT
#include "rapm/model.hpp"

#include <cmath>
#include <string>

#include "json.hpp"

#include "rapm/error.hpp"
#include "rapm/numeric.hpp"

namespace rapm {

double derive_mu(double C, double R) {
    if (!(R > 0.0)) throw ValidationError("derive_mu: R must be positive");
    if (!(C >= 0.0)) throw ValidationError("derive_mu: C must be non-negative");
    return 3.0 * std::cbrt(C * C * R / (2.0 * kPi));
}

double cost_for_mu(double mu, double R) {
    if (!(R > 0.0)) throw ValidationError("cost_for_mu: R must be positive");
    if (!(mu >= 0.0)) throw ValidationError("cost_for_mu: mu must be non-negative");
    const double m = mu / 3.0;
    return std::sqrt(2.0 * kPi * m * m * m / R);
}

ModelParams::ModelParams(double sigma, double r, double C, double R)
    : sigma_(sigma), r_(r), C_(C), R_(R), mu_(0.0) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ValidationError("ModelParams: sigma must be positive and finite");
    }
    if (!std::isfinite(r)) throw ValidationError("ModelParams: r must be finite");
    if (!std::isfinite(C) || !std::isfinite(R)) {
        throw ValidationError("ModelParams: C and R must be finite");
    }
    mu_ = derive_mu(C, R);
}

ModelParams::ModelParams(double sigma, double r, double C, double R, double mu)
    : ModelParams(sigma, r, C, R) {
    const double scale = std::max(std::abs(mu_), std::abs(mu));
    if (std::abs(mu - mu_) > 1e-12 * scale) {
        throw ValidationError("ModelParams: supplied mu " + std::to_string(mu) +
                              " disagrees with 3(C^2 R/2pi)^(1/3) = " + std::to_string(mu_));
    }
}

void to_json(nlohmann::json& j, const ModelParams& p) {
    j = nlohmann::json{{"sigma", p.sigma()}, {"r", p.r()}, {"C", p.C()}, {"R", p.R()}};
}

ModelParams model_params_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("model: expected a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (key != "sigma" && key != "r" && key != "C" && key != "R") {
            throw ValidationError("model: unknown key '" + key + "'");
        }
    }
    auto get = [&](const char* key) {
        if (!j.contains(key)) throw ValidationError(std::string("model: missing key '") + key + "'");
        if (!j.at(key).is_number()) throw ValidationError(std::string("model: '") + key + "' must be a number");
        return j.at(key).get<double>();
    };
    return ModelParams(get("sigma"), get("r"), get("C"), get("R"));
}

double optimal_time_lag(const ModelParams& p, double S, double gamma) {
    if (!(S > 0.0)) throw ValidationError("optimal_time_lag: S must be positive");
    if (gamma == 0.0) {
        throw ValidationError("optimal_time_lag: gamma = 0, no re-hedging is needed (lag is infinite)");
    }
    if (!(p.C() > 0.0)) throw ValidationError("optimal_time_lag: requires C > 0");
    const double denom_base = p.R() * std::sqrt(2.0 * kPi) * std::abs(S * gamma);
    return std::pow(p.C(), 2.0 / 3.0) / (p.sigma2() * std::pow(denom_base, 2.0 / 3.0));
}

double switching_time(const ModelParams& p, double T) {
    if (!(T > 0.0)) throw ValidationError("switching_time: T must be positive");
    const double t_star = T - p.C() / (p.R() * p.sigma2());
    if (!(t_star > 0.0)) {
        throw ValidationError("switching_time: no valid switching time (t* = " +
                              std::to_string(t_star) + " <= 0)");
    }
    return t_star;
}

Admissibility admissible(const ModelParams& p, double T) {
    if (!(T > 0.0)) throw ValidationError("admissible: T must be positive");
    Admissibility a;
    a.c_over_r_ok = p.C() / p.R() < p.sigma2() * T;
    a.cr_product_ok = p.C() * p.R() < kPi / 8.0;
    const double t_star = T - p.C() / (p.R() * p.sigma2());
    if (t_star > 0.0) a.t_star = t_star;
    return a;
}

double parabolicity_margin(double mu, double S, double gamma) {
    if (!(mu > 0.0)) {
        throw ValidationError("parabolicity_margin: mu must be positive (mu = 0 is the linear case)");
    }
    if (!(S > 0.0)) throw ValidationError("parabolicity_margin: S must be positive");
    const double b = 3.0 / (4.0 * mu);
    return b * b * b - S * gamma;
}

}  // namespace rapm
