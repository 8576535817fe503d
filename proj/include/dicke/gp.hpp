#pragma once

// Ground-state geometric phase for one closed rotation of the photon mode,
// a†  ->  a† exp(i phi), phi: 0 -> 2pi. For a state with fixed photon-number
// content the accumulated phase is gamma = 2pi <a†a> exactly; the Pancharatnam
// product over a discretized loop reproduces it with an O(1/K^2) error whose
// leading coefficient is the third central moment of the number distribution.

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dicke/errors.hpp"
#include "dicke/sector_ed.hpp"

namespace dicke {

// Pure state in the photon-number basis, unit norm by construction.
struct NumberBasisState {
    std::map<std::size_t, std::complex<double>> amplitudes;

    double norm_squared() const noexcept {
        double s = 0.0;
        for (const auto& [n, a] : amplitudes) s += std::norm(a);
        return s;
    }

    double photon_expectation() const noexcept {
        double s = 0.0;
        for (const auto& [n, a] : amplitudes) s += double(n) * std::norm(a);
        return s;
    }

    static NumberBasisState normalized(std::map<std::size_t, std::complex<double>> amps) {
        double s = 0.0;
        for (const auto& [n, a] : amps) s += std::norm(a);
        if (!(s > 0.0))
            throw std::invalid_argument("cannot normalize a zero state");
        const double inv = 1.0 / std::sqrt(s);
        for (auto& [n, a] : amps) a *= inv;
        return NumberBasisState{std::move(amps)};
    }
};

// Photon content of a sector ground state: basis entry q holds M* - q photons.
inline NumberBasisState from_ground_state(const EDGroundState& g) {
    std::map<std::size_t, std::complex<double>> amps;
    for (std::size_t q = 0; q < g.amplitudes.size(); ++q)
        amps[g.sector - q] = std::complex<double>(g.amplitudes[q], 0.0);
    return NumberBasisState{std::move(amps)};
}

// Rotated state: each |n> picks up exp(-i n phi).
inline NumberBasisState rotate_state(const NumberBasisState& s, double phi) {
    NumberBasisState out = s;
    for (auto& [n, a] : out.amplitudes) a *= std::polar(1.0, -phi * double(n));
    return out;
}

inline double gp_closed_form(const NumberBasisState& s) noexcept {
    return 2.0 * std::numbers::pi * s.photon_expectation();
}

// Pancharatnam discretization over phi_k = 2pi k / K:
//   gamma = - sum_k arg <psi(phi_k) | psi(phi_{k+1})>.
// Each overlap must stay away from the branch cut of arg, hence the
// requirement K >= 8 and K > 4 <a†a>.
inline double gp_loop(const NumberBasisState& s, std::size_t steps) {
    const double nbar = s.photon_expectation();
    const std::size_t min_admissible =
        std::max<std::size_t>(8, std::size_t(std::floor(4.0 * nbar)) + 1);
    if (steps < 8 || double(steps) <= 4.0 * nbar)
        throw StepCountTooSmall("loop step count " + std::to_string(steps)
                                    + " too small for photon expectation " + std::to_string(nbar)
                                    + "; need at least " + std::to_string(min_admissible),
                                min_admissible);

    const double dphi = 2.0 * std::numbers::pi / double(steps);
    double total = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        const NumberBasisState a = rotate_state(s, dphi * double(k));
        const NumberBasisState b = rotate_state(s, dphi * double(k + 1));
        std::complex<double> overlap(0.0, 0.0);
        auto ia = a.amplitudes.begin();
        auto ib = b.amplitudes.begin();
        while (ia != a.amplitudes.end() && ib != b.amplitudes.end()) {
            if (ia->first < ib->first) ++ia;
            else if (ib->first < ia->first) ++ib;
            else {
                overlap += std::conj(ia->second) * ib->second;
                ++ia;
                ++ib;
            }
        }
        total -= std::arg(overlap);
    }
    return total;
}

} // namespace dicke
