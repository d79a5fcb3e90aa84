// SPDX-License-Identifier: MIT
#include "rapm/symmetry.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "rapm/error.hpp"
#include "rapm/numeric.hpp"

namespace rapm {

// ---------------------------------------------------------------- Rational

namespace {

__extension__ using i128 = __int128;

Rational make_rational(i128 n, i128 d) {
    if (d == 0) throw ValidationError("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 a = n < 0 ? -n : n;
    i128 b = d;
    while (b != 0) {
        const i128 tmp = a % b;
        a = b;
        b = tmp;
    }
    if (a > 1) {
        n /= a;
        d /= a;
    }
    constexpr i128 lim = std::numeric_limits<std::int64_t>::max();
    if (n > lim || n < -lim || d > lim) throw NumericalError("Rational: 64-bit overflow");
    return {static_cast<std::int64_t>(n), static_cast<std::int64_t>(d)};
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw ValidationError("Rational: zero denominator");
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

Rational Rational::from_double(double x, std::int64_t max_den) {
    if (!std::isfinite(x)) throw ValidationError("Rational: non-finite value");
    // Continued-fraction convergents.
    std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double f = x;
    for (int i = 0; i < 64; ++i) {
        const double a = std::floor(f);
        if (std::abs(a) > 9e15) break;
        const auto ai = static_cast<std::int64_t>(a);
        const std::int64_t h2 = ai * h1 + h0;
        const std::int64_t k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if (std::abs(double(h1) / double(k1) - x) <= 1e-15 * std::max(1.0, std::abs(x))) break;
        const double frac = f - a;
        if (frac == 0.0) break;
        f = 1.0 / frac;
    }
    if (k1 == 0 || std::abs(double(h1) / double(k1) - x) > 1e-12 * std::max(1.0, std::abs(x))) {
        throw ValidationError("Rational: no small-denominator approximation");
    }
    return {h1, k1};
}

std::string Rational::to_string() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(Rational a, Rational b) {
    return make_rational(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}
Rational operator-(Rational a, Rational b) { return a + (-b); }
Rational operator*(Rational a, Rational b) {
    return make_rational(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

// ---------------------------------------------------------------- RatePoly

RatePoly::RatePoly(Rational c) {
    if (!c.is_zero()) c_[0] = c;
}

RatePoly RatePoly::r() {
    RatePoly p;
    p.c_[1] = Rational(1);
    return p;
}

void RatePoly::prune() {
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->second.is_zero()) it = c_.erase(it);
        else ++it;
    }
}

double RatePoly::evaluate(double r) const {
    double v = 0.0;
    for (const auto& [k, c] : c_) v += c.to_double() * std::pow(r, k);
    return v;
}

RatePoly RatePoly::substitute(Rational r) const {
    RatePoly out;
    for (const auto& [k, c] : c_) {
        Rational term = c;
        for (int i = 0; i < k; ++i) term = term * r;
        out = out + RatePoly(term);
    }
    return out;
}

std::string RatePoly::to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        const int k = it->first;
        Rational c = it->second;
        const bool neg = c.num() < 0;
        if (neg) c = -c;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        const bool unit = c == Rational(1);
        if (k == 0) os << c.to_string();
        else {
            if (!unit) os << c.to_string() << "*";
            os << "r";
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

RatePoly operator+(const RatePoly& a, const RatePoly& b) {
    RatePoly out = a;
    for (const auto& [k, c] : b.c_) {
        auto it = out.c_.find(k);
        if (it == out.c_.end()) out.c_[k] = c;
        else it->second = it->second + c;
    }
    out.prune();
    return out;
}

RatePoly operator-(const RatePoly& a) {
    RatePoly out = a;
    for (auto& [k, c] : out.c_) c = -c;
    return out;
}

RatePoly operator-(const RatePoly& a, const RatePoly& b) { return a + (-b); }

RatePoly operator*(const RatePoly& a, const RatePoly& b) {
    RatePoly out;
    for (const auto& [ka, ca] : a.c_) {
        for (const auto& [kb, cb] : b.c_) {
            auto& slot = out.c_[ka + kb];
            slot = slot + ca * cb;
        }
    }
    out.prune();
    return out;
}

// ---------------------------------------------------------------- MicroExpr

MicroExpr::MicroExpr(RatePoly constant) { add({}, constant); }

MicroExpr MicroExpr::term(RatePoly coef, Monomial m) {
    if (m.a < 0 || m.b < 0 || m.c < 0) throw ValidationError("MicroExpr: negative exponent");
    MicroExpr e;
    e.add(m, coef);
    return e;
}

void MicroExpr::add(const Monomial& m, const RatePoly& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

RatePoly MicroExpr::coefficient(const Monomial& m) const {
    const auto it = terms_.find(m);
    return it == terms_.end() ? RatePoly{} : it->second;
}

MicroExpr MicroExpr::d_dt() const {
    MicroExpr out;
    for (const auto& [m, c] : terms_) {
        if (m.a > 0) out.add({m.a - 1, m.b, m.c, m.d}, RatePoly(m.a) * c);
        if (m.d != 0) out.add(m, RatePoly(m.d) * RatePoly::r() * c);
    }
    return out;
}

MicroExpr MicroExpr::d_dS() const {
    MicroExpr out;
    for (const auto& [m, c] : terms_) {
        if (m.b > 0) out.add({m.a, m.b - 1, m.c, m.d}, RatePoly(m.b) * c);
    }
    return out;
}

MicroExpr MicroExpr::d_du() const {
    MicroExpr out;
    for (const auto& [m, c] : terms_) {
        if (m.c > 0) out.add({m.a, m.b, m.c - 1, m.d}, RatePoly(m.c) * c);
    }
    return out;
}

double MicroExpr::evaluate(double t, double S, double u, double r) const {
    double v = 0.0;
    for (const auto& [m, c] : terms_) {
        v += c.evaluate(r) * std::pow(t, m.a) * std::pow(S, m.b) * std::pow(u, m.c) * std::exp(m.d * r * t);
    }
    return v;
}

MicroExpr MicroExpr::substitute(Rational r) const {
    MicroExpr out;
    for (const auto& [m, c] : terms_) out.add(m, c.substitute(r));
    return out;
}

std::string MicroExpr::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        std::string factors;
        const auto append = [&](const std::string& f, int e) {
            if (e == 0) return;
            if (!factors.empty()) factors += "*";
            factors += f;
            if (e != 1) factors += "^" + std::to_string(e);
        };
        append("t", m.a);
        append("S", m.b);
        append("u", m.c);
        if (m.d != 0) {
            if (!factors.empty()) factors += "*";
            factors += m.d == 1 ? "exp(r*t)" : "exp(" + std::to_string(m.d) + "*r*t)";
        }
        const std::string cs = c.to_string();
        if (factors.empty()) os << cs;
        else if (cs == "1") os << factors;
        else if (cs == "-1") os << "-" << factors;
        else os << "(" << cs << ")*" << factors;
    }
    return os.str();
}

MicroExpr operator+(const MicroExpr& a, const MicroExpr& b) {
    MicroExpr out = a;
    for (const auto& [m, c] : b.terms_) out.add(m, c);
    return out;
}

MicroExpr operator-(const MicroExpr& a) { return RatePoly(-1) * a; }
MicroExpr operator-(const MicroExpr& a, const MicroExpr& b) { return a + (-b); }

MicroExpr operator*(const MicroExpr& a, const MicroExpr& b) {
    MicroExpr out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            out.add({ma.a + mb.a, ma.b + mb.b, ma.c + mb.c, ma.d + mb.d}, ca * cb);
        }
    }
    return out;
}

MicroExpr operator*(const RatePoly& k, const MicroExpr& a) {
    MicroExpr out;
    for (const auto& [m, c] : a.terms_) out.add(m, k * c);
    return out;
}

// ---------------------------------------------------------------- VectorField

MicroExpr VectorField::apply(const MicroExpr& f) const {
    return xi_t * f.d_dt() + xi_S * f.d_dS() + xi_u * f.d_du();
}

VectorField VectorField::substitute(Rational r) const {
    return {xi_t.substitute(r), xi_S.substitute(r), xi_u.substitute(r)};
}

std::string VectorField::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    const auto part = [&](const MicroExpr& e, const char* d) {
        if (e.is_zero()) return;
        if (!s.empty()) s += " + ";
        s += "(" + e.to_string() + ")" + d;
    };
    part(xi_t, "*d/dt");
    part(xi_S, "*d/dS");
    part(xi_u, "*d/du");
    return s;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
    return {a.xi_t + b.xi_t, a.xi_S + b.xi_S, a.xi_u + b.xi_u};
}
VectorField operator-(const VectorField& a, const VectorField& b) {
    return {a.xi_t - b.xi_t, a.xi_S - b.xi_S, a.xi_u - b.xi_u};
}
VectorField operator*(const RatePoly& k, const VectorField& a) { return {k * a.xi_t, k * a.xi_S, k * a.xi_u}; }

VectorField commutator(const VectorField& X, const VectorField& Y) {
    return {X.apply(Y.xi_t) - Y.apply(X.xi_t), X.apply(Y.xi_S) - Y.apply(X.xi_S), X.apply(Y.xi_u) - Y.apply(X.xi_u)};
}

Basis basis_U(double r) {
    const MicroExpr one(RatePoly(1));
    VectorField U1{{}, MicroExpr::S(), MicroExpr::u()};
    VectorField U2{{}, {}, r == 0.0 ? one : MicroExpr::exp_rt()};
    VectorField U3{one, {}, {}};
    VectorField U4{{}, {}, MicroExpr::S()};
    return {U1, U2, U3, U4};
}

Basis basis_e(double r) {
    const Basis U = basis_U(r);
    if (r == 0.0) return {RatePoly(-1) * U[0], U[1], U[2], U[3]};
    const RatePoly rr = RatePoly::r();
    return {(rr - RatePoly(1)) * U[0] + U[2], U[1], rr * U[0] + U[2], U[3]};
}

std::optional<std::array<RatePoly, 4>> decompose_U(const VectorField& X, bool zero_rate) {
    const Monomial m0{}, mS{0, 1, 0, 0}, mE = zero_rate ? Monomial{} : Monomial{0, 0, 0, 1};
    std::array<RatePoly, 4> c{X.xi_S.coefficient(mS), X.xi_u.coefficient(mE), X.xi_t.coefficient(m0),
                              X.xi_u.coefficient(mS)};
    const Basis U = basis_U(zero_rate ? 0.0 : 1.0);
    VectorField rebuilt;
    for (int i = 0; i < 4; ++i) rebuilt = rebuilt + c[i] * U[i];
    if (!(rebuilt == X)) return std::nullopt;
    return c;
}

std::optional<std::array<RatePoly, 4>> decompose_e(const VectorField& X, bool zero_rate) {
    const auto u = decompose_U(X, zero_rate);
    if (!u) return std::nullopt;
    const auto& [c1, c2, c3, c4] = *u;
    if (zero_rate) return std::array<RatePoly, 4>{-c1, c2, c3, c4};
    const RatePoly r = RatePoly::r();
    return std::array<RatePoly, 4>{-c1 + r * c3, c2, c1 - (r - RatePoly(1)) * c3, c4};
}

std::array<std::array<std::array<double, 4>, 4>, 4> structure_constants_e(double r) {
    const Basis e = basis_e(r);
    std::array<std::array<std::array<double, 4>, 4>, 4> c{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const auto coords = decompose_e(commutator(e[i], e[j]), r == 0.0);
            if (!coords) throw NumericalError("structure_constants_e: bracket outside the algebra");
            for (int k = 0; k < 4; ++k) c[i][j][k] = (*coords)[k].evaluate(r);
        }
    }
    return c;
}

std::string commutator_table(double r, bool e_basis) {
    const Basis B = e_basis ? basis_e(r) : basis_U(r);
    const char* name = e_basis ? "e" : "U";
    const bool zr = r == 0.0;
    std::ostringstream os;
    os << "# r = " << r << (zr ? "" : " (r symbolic below)") << "\n";
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const VectorField br = commutator(B[i], B[j]);
            const auto coords = e_basis ? decompose_e(br, zr) : decompose_U(br, zr);
            if (!coords) throw NumericalError("commutator_table: bracket outside the algebra");
            std::string cell;
            for (int k = 0; k < 4; ++k) {
                const RatePoly& c = (*coords)[k];
                if (c.is_zero()) continue;
                std::string cs = c.to_string();
                const bool compound = c.coefficients().size() > 1;
                std::string term = cs == "1" ? "" : cs == "-1" ? "-" : (compound ? "(" + cs + ")*" : cs + "*");
                term += std::string(name) + std::to_string(k + 1);
                if (!cell.empty()) cell += (term[0] == '-') ? " - " + term.substr(1) : " + " + term;
                else cell = term;
            }
            os << "[" << name << i + 1 << "," << name << j + 1 << "] = " << (cell.empty() ? "0" : cell) << "\n";
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- Table 1

namespace {

using Coords = std::vector<std::array<double, 4>>;

std::array<double, 4> rot(const SubalgebraParams& q) { return {0, 0, std::cos(q.phi), std::sin(q.phi)}; }
std::array<double, 4> perp(const SubalgebraParams& q) { return {0, 0, std::sin(q.phi), -std::cos(q.phi)}; }
std::array<double, 4> e1_plus_a(const SubalgebraParams& q) {
    return {1, 0, q.a * std::cos(q.phi), q.a * std::sin(q.phi)};
}
std::array<double, 4> e2_plus_eps(const SubalgebraParams& q) {
    return {0, 1, q.eps * std::cos(q.phi), q.eps * std::sin(q.phi)};
}
constexpr std::array<double, 4> E1{1, 0, 0, 0}, E2{0, 1, 0, 0}, E3{0, 0, 1, 0}, E4{0, 0, 0, 1};

}  // namespace

std::vector<SubalgebraEntry> subalgebra_catalog(double /*r*/) {
    const std::string rot_s = "e3*cos(phi) + e4*sin(phi)";
    const std::string perp_s = "e3*sin(phi) - e4*cos(phi)";
    return {
        {"h1", 1, "<e2>", {}, [](const SubalgebraParams&) { return Coords{E2}; }},
        {"h2", 1, "<" + rot_s + ">", {"phi"}, [](const SubalgebraParams& q) { return Coords{rot(q)}; }},
        {"h3", 1, "<e1 + a*(" + rot_s + ")>", {"a", "phi"},
         [](const SubalgebraParams& q) { return Coords{e1_plus_a(q)}; }},
        {"h4", 1, "<e2 + eps*(" + rot_s + ")>", {"eps", "phi"},
         [](const SubalgebraParams& q) { return Coords{e2_plus_eps(q)}; }},
        {"h5", 2, "<e1 + a*(" + rot_s + "), e2>", {"a", "phi"},
         [](const SubalgebraParams& q) { return Coords{e1_plus_a(q), E2}; }},
        {"h6", 2, "<e3, e4>", {}, [](const SubalgebraParams&) { return Coords{E3, E4}; }},
        {"h7", 2, "<e1 + a*(" + rot_s + "), " + perp_s + ">", {"a", "phi"},
         [](const SubalgebraParams& q) { return Coords{e1_plus_a(q), perp(q)}; }},
        {"h8", 2, "<e2 + eps*(" + rot_s + "), " + perp_s + ">", {"eps", "phi"},
         [](const SubalgebraParams& q) { return Coords{e2_plus_eps(q), perp(q)}; }},
        {"h9", 2, "<e2, " + perp_s + ">", {"phi"}, [](const SubalgebraParams& q) { return Coords{E2, perp(q)}; }},
        {"h10", 3, "<e1, e3, e4>", {}, [](const SubalgebraParams&) { return Coords{E1, E3, E4}; }},
        {"h11", 3, "<e2, e3, e4>", {}, [](const SubalgebraParams&) { return Coords{E2, E3, E4}; }},
        {"h12", 3, "<e1 + a*(" + rot_s + "), " + perp_s + ", e2>", {"a", "phi"},
         [](const SubalgebraParams& q) { return Coords{e1_plus_a(q), perp(q), E2}; }},
    };
}

double closure_defect(const SubalgebraEntry& e, const SubalgebraParams& params, double r) {
    const auto c = structure_constants_e(r);
    const Coords gens = e.coordinates(params);
    // Orthonormal basis of the span (modified Gram-Schmidt).
    std::vector<std::array<double, 4>> ortho;
    for (auto v : gens) {
        for (const auto& q : ortho) {
            double d = 0;
            for (int k = 0; k < 4; ++k) d += v[k] * q[k];
            for (int k = 0; k < 4; ++k) v[k] -= d * q[k];
        }
        double n = 0;
        for (double x : v) n += x * x;
        n = std::sqrt(n);
        if (n < 1e-12) throw ValidationError("closure_defect: generators are linearly dependent");
        for (double& x : v) x /= n;
        ortho.push_back(v);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            std::array<double, 4> b{};
            for (int a = 0; a < 4; ++a)
                for (int bb = 0; bb < 4; ++bb)
                    for (int k = 0; k < 4; ++k) b[k] += gens[i][a] * gens[j][bb] * c[a][bb][k];
            for (const auto& q : ortho) {
                double d = 0;
                for (int k = 0; k < 4; ++k) d += b[k] * q[k];
                for (int k = 0; k < 4; ++k) b[k] -= d * q[k];
            }
            double n = 0;
            for (double x : b) n += x * x;
            worst = std::max(worst, std::sqrt(n));
        }
    }
    return worst;
}

// ---------------------------------------------------------------- flows

Generator generator_from_string(const std::string& s) {
    if (s == "U1") return Generator::U1;
    if (s == "U2") return Generator::U2;
    if (s == "U3") return Generator::U3;
    if (s == "U4") return Generator::U4;
    throw ValidationError("unknown generator '" + s + "' (expected U1..U4)");
}

std::string to_string(Generator g) {
    switch (g) {
        case Generator::U1: return "U1";
        case Generator::U2: return "U2";
        case Generator::U3: return "U3";
        case Generator::U4: return "U4";
    }
    return "?";
}

SurfaceFn flow(Generator g, double lam, const SurfaceFn& u, double r) {
    Support s = u.support();
    const bool jets = u.has_jet();
    switch (g) {
        case Generator::U1: {
            const double el = std::exp(lam);
            s.S_min *= el;
            s.S_max *= el;
            SurfaceFn::JetFn jet;
            if (jets) {
                jet = [u, el](double S, double t) {
                    const auto j = u.jet(S / el, t);
                    return SurfaceJet{el * j.u, el * j.u_t, j.u_S, j.u_SS / el};
                };
            }
            return {[u, el](double S, double t) { return el * u(S / el, t); }, s, jet};
        }
        case Generator::U2: {
            SurfaceFn::JetFn jet;
            if (jets) {
                jet = [u, lam, r](double S, double t) {
                    auto j = u.jet(S, t);
                    const double e = std::exp(r * t);
                    j.u += lam * e;
                    j.u_t += lam * r * e;
                    return j;
                };
            }
            return {[u, lam, r](double S, double t) { return u(S, t) + lam * std::exp(r * t); }, s, jet};
        }
        case Generator::U3: {
            s.t_min += lam;
            s.t_max += lam;
            SurfaceFn::JetFn jet;
            if (jets) jet = [u, lam](double S, double t) { return u.jet(S, t - lam); };
            return {[u, lam](double S, double t) { return u(S, t - lam); }, s, jet};
        }
        case Generator::U4: {
            SurfaceFn::JetFn jet;
            if (jets) {
                jet = [u, lam](double S, double t) {
                    auto j = u.jet(S, t);
                    j.u += lam * S;
                    j.u_S += lam;
                    return j;
                };
            }
            return {[u, lam](double S, double t) { return u(S, t) + lam * S; }, s, jet};
        }
    }
    throw ValidationError("flow: unknown generator");
}

FlowReport preserves_solutions(const std::function<SurfaceFn(const SurfaceFn&)>& transform, const SurfaceFn& u,
                               const ModelParams& p, const GridSpec& grid, double abs_tol) {
    FlowReport rep;
    rep.base_max = residual_norm(u, p, grid).max_abs;
    rep.flowed_max = residual_norm(transform(u), p, grid).max_abs;
    rep.pass = rep.flowed_max <= rep.base_max + abs_tol;
    return rep;
}

FlowReport preserves_solutions(Generator g, double lam, const SurfaceFn& u, const ModelParams& p,
                               const GridSpec& grid, double abs_tol) {
    return preserves_solutions([&](const SurfaceFn& v) { return flow(g, lam, v, p.r()); }, u, p, grid, abs_tol);
}

// ---------------------------------------------------------------- prolongation

EquationJet on_shell_jet(const ModelParams& p, double t, double S, double u, double u_S, double u_SS,
                         double u_tS) {
    EquationJet j{t, S, u, u_S, u_SS, u_tS, 0.0};
    j.u_t = -rapm_operator(p, u, 0.0, u_S, u_SS, S);
    return j;
}

double prolongation_residual(const VectorField& X, const ModelParams& p, const EquationJet& j) {
    const double r = p.r();
    const auto ev = [&](const MicroExpr& e) { return e.evaluate(j.t, j.S, j.u, r); };
    // Total derivatives of a function of (t, S, u).
    const auto Dt = [&](const MicroExpr& f) { return ev(f.d_dt()) + j.u_t * ev(f.d_du()); };
    const auto DS = [&](const MicroExpr& f) { return ev(f.d_dS()) + j.u_S * ev(f.d_du()); };
    const auto DSS = [&](const MicroExpr& f) {
        return ev(f.d_dS().d_dS()) + 2.0 * j.u_S * ev(f.d_dS().d_du()) + j.u_S * j.u_S * ev(f.d_du().d_du()) +
               j.u_SS * ev(f.d_du());
    };
    const double xS = ev(X.xi_S);
    const double xu = ev(X.xi_u);
    const double eta_t = Dt(X.xi_u) - j.u_t * Dt(X.xi_t) - j.u_S * Dt(X.xi_S);
    const double eta_S = DS(X.xi_u) - j.u_t * DS(X.xi_t) - j.u_S * DS(X.xi_S);
    const double eta_SS = DSS(X.xi_u) - j.u_t * DSS(X.xi_t) - j.u_S * DSS(X.xi_S) - 2.0 * j.u_tS * DS(X.xi_t) -
                          2.0 * j.u_SS * DS(X.xi_S);

    const double s2 = p.sigma2();
    const double mu = p.mu();
    const double Xv = j.S * j.u_SS;
    const double c = signed_cbrt(Xv);
    const double F_S = s2 * Xv - (7.0 / 6.0) * s2 * mu * Xv * c + r * j.u_S;
    const double F_u = -r;
    const double F_uS = r * j.S;
    const double F_uSS = 0.5 * s2 * j.S * j.S * (1.0 - (4.0 / 3.0) * mu * c);

    const double terms[] = {xS * F_S, xu * F_u, eta_t, eta_S * F_uS, eta_SS * F_uSS};
    double sum = 0.0, mag = 0.0;
    for (double v : terms) {
        sum += v;
        mag += std::abs(v);
    }
    return std::abs(sum) / (1.0 + mag);
}

double max_prolongation_residual(const VectorField& X, const ModelParams& p, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U01(0.0, 1.0);
    const auto uni = [&](double a, double b) { return a + (b - a) * U01(rng); };
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double S = uni(1.0, 200.0);
        const double mag = std::exp(uni(std::log(1e-3), std::log(0.1)));
        const double u_SS = (U01(rng) < 0.5 ? -1.0 : 1.0) * mag;
        const auto jet = on_shell_jet(p, uni(0.0, 1.0), S, uni(-50.0, 50.0), uni(-2.0, 2.0), u_SS, uni(-1.0, 1.0));
        worst = std::max(worst, prolongation_residual(X, p, jet));
    }
    return worst;
}

}  // namespace rapm
