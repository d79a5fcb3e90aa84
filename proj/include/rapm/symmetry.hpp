// SPDX-License-Identifier: MIT
/**
 * @file symmetry.hpp
 * @brief Point symmetries of the RAPM equation
 *
 * Generators are vector fields xi_t d/dt + xi_S d/dS + xi_u d/du whose
 * components are finite sums of monomials t^a S^b u^c e^(d r t). The rate r
 * is kept symbolic: coefficients are polynomials in r with rational
 * coefficients, so bracket identities are checked exactly and then
 * specialized to any rational r.
 *
 *   U1 = S d/dS + u d/du,  U2 = e^(rt) d/du,  U3 = d/dt,  U4 = S d/du.
 */

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rapm/model.hpp"
#include "rapm/pde.hpp"
#include "rapm/surface.hpp"

namespace rapm {

/// Exact rational with 64-bit numerator and positive denominator in lowest terms.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    /// Best rational approximation with denominator <= max_den; throws if not within 1e-12.
    static Rational from_double(double x, std::int64_t max_den = 1'000'000'000);

    [[nodiscard]] std::int64_t num() const noexcept { return num_; }
    [[nodiscard]] std::int64_t den() const noexcept { return den_; }
    [[nodiscard]] double to_double() const noexcept { return double(num_) / double(den_); }
    [[nodiscard]] bool is_zero() const noexcept { return num_ == 0; }
    [[nodiscard]] std::string to_string() const;

    friend Rational operator+(Rational a, Rational b);
    friend Rational operator-(Rational a, Rational b);
    friend Rational operator*(Rational a, Rational b);
    friend Rational operator-(Rational a) { return {-a.num_, a.den_}; }
    friend bool operator==(const Rational&, const Rational&) = default;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Polynomial in the rate r with rational coefficients.
class RatePoly {
public:
    RatePoly() = default;
    RatePoly(Rational c);  // NOLINT: constants convert implicitly
    RatePoly(std::int64_t c) : RatePoly(Rational(c)) {}  // NOLINT
    static RatePoly r();

    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
    [[nodiscard]] double evaluate(double r) const;
    [[nodiscard]] RatePoly substitute(Rational r) const;
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] const std::map<int, Rational>& coefficients() const noexcept { return c_; }

    friend RatePoly operator+(const RatePoly& a, const RatePoly& b);
    friend RatePoly operator-(const RatePoly& a, const RatePoly& b);
    friend RatePoly operator*(const RatePoly& a, const RatePoly& b);
    friend RatePoly operator-(const RatePoly& a);
    friend bool operator==(const RatePoly&, const RatePoly&) = default;

private:
    void prune();
    std::map<int, Rational> c_;  // power of r -> nonzero coefficient
};

/// Exponents of t^a S^b u^c e^(d r t).
struct Monomial {
    int a = 0;
    int b = 0;
    int c = 0;
    int d = 0;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Canonical sum of monomials with nonzero RatePoly coefficients.
class MicroExpr {
public:
    MicroExpr() = default;
    MicroExpr(RatePoly constant);  // NOLINT
    static MicroExpr term(RatePoly coef, Monomial m);
    static MicroExpr t() { return term(1, {1, 0, 0, 0}); }
    static MicroExpr S() { return term(1, {0, 1, 0, 0}); }
    static MicroExpr u() { return term(1, {0, 0, 1, 0}); }
    static MicroExpr exp_rt() { return term(1, {0, 0, 0, 1}); }

    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] const std::map<Monomial, RatePoly>& terms() const noexcept { return terms_; }
    /// Coefficient of a monomial (zero if absent).
    [[nodiscard]] RatePoly coefficient(const Monomial& m) const;

    [[nodiscard]] MicroExpr d_dt() const;
    [[nodiscard]] MicroExpr d_dS() const;
    [[nodiscard]] MicroExpr d_du() const;
    [[nodiscard]] double evaluate(double t, double S, double u, double r) const;
    [[nodiscard]] MicroExpr substitute(Rational r) const;
    [[nodiscard]] std::string to_string() const;

    friend MicroExpr operator+(const MicroExpr& a, const MicroExpr& b);
    friend MicroExpr operator-(const MicroExpr& a, const MicroExpr& b);
    friend MicroExpr operator*(const MicroExpr& a, const MicroExpr& b);
    friend MicroExpr operator*(const RatePoly& k, const MicroExpr& a);
    friend MicroExpr operator-(const MicroExpr& a);
    friend bool operator==(const MicroExpr&, const MicroExpr&) = default;

private:
    void add(const Monomial& m, const RatePoly& c);
    std::map<Monomial, RatePoly> terms_;
};

struct VectorField {
    MicroExpr xi_t;
    MicroExpr xi_S;
    MicroExpr xi_u;

    /// X(f) = xi_t f_t + xi_S f_S + xi_u f_u.
    [[nodiscard]] MicroExpr apply(const MicroExpr& f) const;
    [[nodiscard]] bool is_zero() const noexcept { return xi_t.is_zero() && xi_S.is_zero() && xi_u.is_zero(); }
    [[nodiscard]] VectorField substitute(Rational r) const;
    [[nodiscard]] std::string to_string() const;

    friend VectorField operator+(const VectorField& a, const VectorField& b);
    friend VectorField operator-(const VectorField& a, const VectorField& b);
    friend VectorField operator*(const RatePoly& k, const VectorField& a);
    friend bool operator==(const VectorField&, const VectorField&) = default;
};

/// [X, Y]^i = X(Y^i) - Y(X^i).
[[nodiscard]] VectorField commutator(const VectorField& X, const VectorField& Y);

using Basis = std::array<VectorField, 4>;

/// U1..U4. For r == 0, U2 = d/du; otherwise U2 = e^(rt) d/du with r symbolic.
[[nodiscard]] Basis basis_U(double r);
/// e1..e4: r != 0: e1 = (r-1)U1 + U3, e2 = U2, e3 = r U1 + U3, e4 = U4;
/// r == 0: e1 = -U1, e2 = U2, e3 = U3, e4 = U4.
[[nodiscard]] Basis basis_e(double r);

/// Coordinates of X in U1..U4 (RatePoly coefficients); nullopt if X is outside the span.
[[nodiscard]] std::optional<std::array<RatePoly, 4>> decompose_U(const VectorField& X, bool zero_rate);
/// Coordinates of X in e1..e4.
[[nodiscard]] std::optional<std::array<RatePoly, 4>> decompose_e(const VectorField& X, bool zero_rate);

/// c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k, evaluated at r.
[[nodiscard]] std::array<std::array<std::array<double, 4>, 4>, 4> structure_constants_e(double r);

/// Printable 4x4 bracket table of a basis in its own coordinates ("U" or "e").
[[nodiscard]] std::string commutator_table(double r, bool e_basis);

// ---------------------------------------------------------------- Table 1

struct SubalgebraParams {
    double a = 1.0;
    double eps = 1.0;
    double phi = 0.0;  ///< one angle shared by both generators of h7, h8, h12
};

struct SubalgebraEntry {
    std::string id;          ///< "h1" .. "h12"
    int dimension = 0;
    std::string generators;  ///< human-readable combination of e1..e4
    std::vector<std::string> parameters;
    /// e-coordinates of each generator for the given parameter values.
    std::vector<std::array<double, 4>> (*coordinates)(const SubalgebraParams&) = nullptr;
};

[[nodiscard]] std::vector<SubalgebraEntry> subalgebra_catalog(double r);

/// Largest distance of a bracket of generators from their span (0 for a closed subalgebra).
[[nodiscard]] double closure_defect(const SubalgebraEntry& e, const SubalgebraParams& params, double r);

// ---------------------------------------------------------------- flows

enum class Generator { U1, U2, U3, U4 };

[[nodiscard]] Generator generator_from_string(const std::string& s);
[[nodiscard]] std::string to_string(Generator g);

/**
 * Closed-form flows: U1: e^lam u(e^-lam S, t); U2: u + lam e^(rt);
 * U3: u(S, t - lam); U4: u + lam S. The support moves with the flow; jets
 * are carried along when present.
 */
[[nodiscard]] SurfaceFn flow(Generator g, double lam, const SurfaceFn& u, double r);

struct FlowReport {
    double base_max = 0.0;
    double flowed_max = 0.0;
    bool pass = false;
};

/// Residual of u and of its image on `grid`; pass iff flowed_max <= base_max + abs_tol.
[[nodiscard]] FlowReport preserves_solutions(const std::function<SurfaceFn(const SurfaceFn&)>& transform,
                                             const SurfaceFn& u, const ModelParams& p, const GridSpec& grid,
                                             double abs_tol = 1e-9);
[[nodiscard]] FlowReport preserves_solutions(Generator g, double lam, const SurfaceFn& u, const ModelParams& p,
                                             const GridSpec& grid, double abs_tol = 1e-9);

// ---------------------------------------------------------------- prolongation

struct EquationJet {
    double t = 0.0;
    double S = 1.0;
    double u = 0.0;
    double u_S = 0.0;
    double u_SS = 0.0;
    double u_tS = 0.0;
    double u_t = 0.0;  ///< fixed by the equation
};

/// Jet on the equation manifold: u_t solved from the RAPM equation.
[[nodiscard]] EquationJet on_shell_jet(const ModelParams& p, double t, double S, double u, double u_S, double u_SS,
                                       double u_tS);

/// pr^(2) X applied to the RAPM operator at a jet, divided by 1 + sum of term magnitudes.
[[nodiscard]] double prolongation_residual(const VectorField& X, const ModelParams& p, const EquationJet& jet);

/// Max prolongation residual over `n` random on-shell jets.
[[nodiscard]] double max_prolongation_residual(const VectorField& X, const ModelParams& p, std::size_t n,
                                               std::uint64_t seed);

}  // namespace rapm
