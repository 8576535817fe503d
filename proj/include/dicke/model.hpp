#pragma once

// Thermodynamic-limit (mean-field) treatment of the rotating-wave Dicke model
//
//   H = omega a†a + (omega0/2) Jz + (lambda/sqrt(N)) (J+ a + J- a†)
//
// for N atoms in the symmetric j = N/2 sector. Bosonizing the pseudospin
// (Holstein-Primakoff), displacing both modes by sqrt(N) alpha and
// -sqrt(N) beta, and expanding in 1/sqrt(N) gives
//
//   H = N H0(alpha, beta) + sqrt(N) H1 + H2 + O(1/sqrt(N)).
//
// H0 is the classical energy surface minimized here, H1 collects the linear
// fluctuation terms (identically zero at the minimizer), H2 the quadratic ones.
// All of this module is closed-form; no iteration anywhere.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dicke/errors.hpp"

namespace dicke {

struct ModelParams {
    double omega;  // photon frequency
    double omega0; // atomic level splitting
};

// Both frequencies must be finite and strictly positive.
inline ModelParams validate_params(double omega, double omega0) {
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw NonPositiveParameter("omega must be finite and > 0, got " + std::to_string(omega));
    if (!(omega0 > 0.0) || !std::isfinite(omega0))
        throw NonPositiveParameter("omega0 must be finite and > 0, got " + std::to_string(omega0));
    return ModelParams{omega, omega0};
}

// lambda_c = sqrt(omega0 omega / 2), boundary between the normal and the
// superradiant mean-field solutions.
inline double critical_coupling(const ModelParams& p) noexcept {
    return std::sqrt(p.omega0 * p.omega / 2.0);
}

inline void require_nonnegative_coupling(double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw NegativeCoupling("lambda must be finite and >= 0, got " + std::to_string(lambda));
}

enum class Phase { Normal, SuperRadiant };

// Minimizer of H0. delta = omega omega0 / (2 lambda^2) is recorded as 1 at and
// below lambda_c, where the displaced solution collapses onto alpha = beta = 0.
struct MeanFieldSolution {
    double lambda;
    double delta;
    double alpha; // photon displacement, >= 0
    double beta;  // atomic displacement, >= 0
    Phase phase;
};

inline MeanFieldSolution mean_field(const ModelParams& p, double lambda) {
    require_nonnegative_coupling(lambda);
    const double lc = critical_coupling(p);
    if (lambda <= lc)
        return MeanFieldSolution{lambda, 1.0, 0.0, 0.0, Phase::Normal};
    const double delta = p.omega * p.omega0 / (2.0 * lambda * lambda);
    const double beta = std::sqrt((1.0 - delta) / 2.0);
    const double alpha = lambda * std::sqrt(1.0 - delta * delta) / (2.0 * p.omega);
    return MeanFieldSolution{lambda, delta, alpha, beta, Phase::SuperRadiant};
}

// Classical energy surface
//   H0(alpha, beta) = omega alpha^2 + (omega0/2)(beta^2 - 1/2) - 2 lambda alpha beta sqrt(1-beta^2).
// Pure evaluation; only requires beta^2 <= 1.
inline double h0_energy(const ModelParams& p, double lambda, double alpha, double beta) {
    const double b2 = beta * beta;
    if (b2 > 1.0)
        throw BetaOutOfRange("h0_energy requires beta^2 <= 1, got beta = " + std::to_string(beta));
    return p.omega * alpha * alpha + 0.5 * p.omega0 * (b2 - 0.5)
         - 2.0 * lambda * alpha * beta * std::sqrt(1.0 - b2);
}

// Ground energy per atom at the minimizer: -omega0/4 in the normal phase,
// -[lambda^2 (1-delta^2)/(4 omega) + omega0 delta / 4] above lambda_c.
inline double ground_energy_per_atom(const ModelParams& p, double lambda) {
    require_nonnegative_coupling(lambda);
    const double lc = critical_coupling(p);
    if (lambda <= lc)
        return -p.omega0 / 4.0;
    const double delta = p.omega * p.omega0 / (2.0 * lambda * lambda);
    return -(lambda * lambda * (1.0 - delta * delta) / (4.0 * p.omega) + p.omega0 * delta / 4.0);
}

// Coefficients of the quadratic form H2 over the operator monomials listed per
// field. c is the photon fluctuation mode, d the atomic one.
struct QuadraticCoefficients {
    double n_c;        // c†c
    double n_d;        // d†d
    double exchange;   // c†d + c d†
    double pair;       // c†d† + c d
    double d_pair;     // (d†)^2 + d^2
    double d_quad;     // (d† + d)^2
    double cross_quad; // (d† + d)(c† + c)
};

struct FluctuationCoefficients {
    double h1_c; // coefficient of (c† + c) in H1
    double h1_d; // coefficient of (d† + d) in H1
    QuadraticCoefficients h2;
};

// Linear and quadratic fluctuation coefficients at an arbitrary displacement
// (alpha, beta). Needs beta^2 < 1 strictly: the expansion divides by
// k = 1 - beta^2. Both H1 coefficients are half-gradients of H0,
//   h1_c = (1/2) dH0/dalpha,  h1_d = (1/2) dH0/dbeta,
// so they vanish exactly at the mean-field minimizer.
inline FluctuationCoefficients fluctuation_coefficients(const ModelParams& p, double lambda,
                                                        double alpha, double beta) {
    const double b2 = beta * beta;
    if (!(b2 < 1.0))
        throw BetaOutOfRange("fluctuation_coefficients requires beta^2 < 1, got beta = "
                             + std::to_string(beta));
    const double k = 1.0 - b2;
    const double sk = std::sqrt(k);

    FluctuationCoefficients f{};
    f.h1_c = -p.omega * alpha + lambda * beta * sk;
    f.h1_d = 0.5 * p.omega0 * beta - lambda * alpha * (1.0 - 2.0 * b2) / sk;

    f.h2.n_c = p.omega;
    f.h2.n_d = 0.5 * p.omega0 + 2.0 * lambda * alpha * beta / sk;
    f.h2.exchange = lambda * sk;
    f.h2.pair = 0.0;
    f.h2.d_pair = lambda * alpha * beta / (2.0 * sk);
    f.h2.d_quad = lambda * alpha * beta * b2 / (4.0 * k * sk);
    f.h2.cross_quad = -lambda * b2 / (2.0 * sk);
    return f;
}

// Ground-state geometric phase per atom accumulated under a 2pi rotation of
// the photon mode: gamma0/N = 2 pi alpha^2, i.e. zero through the normal phase
// and (pi / 2 omega^2)(lambda^2 - lambda_c^4 / lambda^2) above lambda_c.
inline double gp_per_atom(const ModelParams& p, double lambda) {
    require_nonnegative_coupling(lambda);
    const double lc = critical_coupling(p);
    if (lambda <= lc)
        return 0.0;
    const double lc2 = lc * lc;
    return std::numbers::pi / (2.0 * p.omega * p.omega)
         * (lambda * lambda - lc2 * lc2 / (lambda * lambda));
}

// Right derivative of gp_per_atom: zero below lambda_c, closed form at and
// above. The jump at lambda_c is the transition's nonanalyticity.
inline double gp_slope_per_atom(const ModelParams& p, double lambda) {
    require_nonnegative_coupling(lambda);
    const double lc = critical_coupling(p);
    if (lambda < lc)
        return 0.0;
    const double lc2 = lc * lc;
    return std::numbers::pi / (2.0 * p.omega * p.omega)
         * (2.0 * lambda + 2.0 * lc2 * lc2 / (lambda * lambda * lambda));
}

// Slope of gamma0/N approaching lambda_c from above: 2 pi lambda_c / omega^2.
inline double gp_slope_at_critical(const ModelParams& p) noexcept {
    return 2.0 * std::numbers::pi * critical_coupling(p) / (p.omega * p.omega);
}

} // namespace dicke
