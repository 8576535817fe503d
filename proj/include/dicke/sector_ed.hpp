#pragma once

// Finite-N exact diagonalization. The rotating-wave Hamiltonian conserves the
// total excitation number a†a + Jz + N/2, so it is block diagonal over sectors
// of fixed M. Within a sector the basis |n = M - q photons, q excited atoms>,
// q = 0..min(M, N), makes the block real symmetric tridiagonal. The ground
// state is found by scanning sectors up to a policy bound.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "dicke/errors.hpp"
#include "dicke/model.hpp"
#include "dicke/tridiagonal.hpp"

namespace dicke {

inline std::size_t sector_dimension(std::size_t n_atoms, std::size_t excitation) noexcept {
    return std::min(excitation, n_atoms) + 1;
}

// Sector block over q:
//   diag[q]    = omega (M - q) + (omega0/2)(q - N/2)
//   offdiag[q] = (lambda/sqrt(N)) sqrt(M - q) sqrt((N - q)(q + 1))
// sqrt((N-q)(q+1)) is the collective raising element sqrt(j(j+1) - m(m+1)) at
// j = N/2, m = q - N/2.
inline TridiagonalMatrix build_sector(const ModelParams& p, long long n_atoms, double lambda,
                                      long long excitation) {
    if (n_atoms < 1)
        throw InvalidSector("n_atoms must be >= 1, got " + std::to_string(n_atoms));
    if (excitation < 0)
        throw InvalidSector("excitation number must be >= 0, got " + std::to_string(excitation));
    require_nonnegative_coupling(lambda);

    const double N = double(n_atoms);
    const double M = double(excitation);
    const std::size_t d = sector_dimension(std::size_t(n_atoms), std::size_t(excitation));

    TridiagonalMatrix t;
    t.diag.resize(d);
    t.offdiag.resize(d - 1);
    const double g = lambda / std::sqrt(N);
    for (std::size_t q = 0; q < d; ++q) {
        const double qd = double(q);
        t.diag[q] = p.omega * (M - qd) + 0.5 * p.omega0 * (qd - 0.5 * N);
        if (q + 1 < d)
            t.offdiag[q] = g * std::sqrt(M - qd) * std::sqrt((N - qd) * (qd + 1.0));
    }
    return t;
}

// How far the sector scan goes: ceil(factor * N * max(1, lambda^2/omega^2)).
// The default factor 6 leaves a wide margin over the mean-field photon plus
// atomic excitation density, which stays well below 1 per atom per unit of
// lambda^2/omega^2 in the coupling ranges of interest.
struct ScanPolicy {
    double m_max_factor = 6.0;
};

inline std::size_t scan_upper_bound(const ModelParams& p, std::size_t n_atoms, double lambda,
                                    const ScanPolicy& policy = {}) {
    if (!(policy.m_max_factor > 0.0) || !std::isfinite(policy.m_max_factor))
        throw std::invalid_argument("m_max_factor must be finite and > 0");
    const double r = lambda * lambda / (p.omega * p.omega);
    const double m = std::ceil(policy.m_max_factor * double(n_atoms) * std::max(1.0, r));
    return std::max<std::size_t>(1, std::size_t(m));
}

struct EDGroundState {
    std::size_t n_atoms;
    double lambda;
    std::size_t sector;              // winning excitation number M*
    double energy;
    std::vector<double> amplitudes;  // over q = 0..min(M*, N); unit norm
    double photon_expectation;       // sum_q (M* - q) amplitudes[q]^2
};

// Scan sectors M = 0..Mmax for the global minimum. Ties (exact level
// crossings) resolve to the smaller M. If the minimum sits on the scan
// boundary the true ground sector may lie beyond it, which is an error, not a
// silent answer.
inline EDGroundState ground_state(const ModelParams& p, long long n_atoms, double lambda,
                                  const ScanPolicy& policy = {}) {
    if (n_atoms < 1)
        throw InvalidSector("n_atoms must be >= 1, got " + std::to_string(n_atoms));
    require_nonnegative_coupling(lambda);

    const std::size_t N = std::size_t(n_atoms);
    const std::size_t m_max = scan_upper_bound(p, N, lambda, policy);

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_m = 0;
    for (std::size_t m = 0; m <= m_max; ++m) {
        const double e = smallest_eigenvalue(build_sector(p, n_atoms, lambda, (long long)m));
        if (e < best) {
            best = e;
            best_m = m;
        }
    }
    if (best_m == m_max)
        throw ScanBoundaryHit("sector scan minimum sits on the boundary M = "
                              + std::to_string(m_max) + " at n_atoms = " + std::to_string(n_atoms)
                              + ", lambda = " + std::to_string(lambda)
                              + "; raise m_max_factor to widen the scan");

    const EigenPair gs = sector_ground(build_sector(p, n_atoms, lambda, (long long)best_m));
    double nbar = 0.0;
    for (std::size_t q = 0; q < gs.vector.size(); ++q)
        nbar += double(best_m - q) * gs.vector[q] * gs.vector[q];

    return EDGroundState{N, lambda, best_m, gs.value, gs.vector, nbar};
}

} // namespace dicke
