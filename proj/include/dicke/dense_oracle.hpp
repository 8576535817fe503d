#pragma once

// Brute-force cross-check that ignores the sector structure entirely: the
// Hamiltonian on the full truncated product space |n photons> (x) |q excited>,
// n <= n_max, diagonalized densely. Deliberately a separate route from the
// tridiagonal code so the two validate each other. Pulls in Eigen; production
// code paths never include this header.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dicke/errors.hpp"
#include "dicke/model.hpp"

namespace dicke {

inline constexpr std::size_t dense_dimension_cap = 2048;

// Basis index n * (N + 1) + q. The coupling annihilates a photon while
// exciting one atom (and h.c.), so every matrix element preserves n + q.
inline Eigen::MatrixXd dense_hamiltonian(const ModelParams& p, long long n_atoms, double lambda,
                                         long long photon_cutoff) {
    if (n_atoms < 1)
        throw InvalidSector("n_atoms must be >= 1, got " + std::to_string(n_atoms));
    if (photon_cutoff < 0)
        throw InvalidSector("photon cutoff must be >= 0, got " + std::to_string(photon_cutoff));
    require_nonnegative_coupling(lambda);

    const std::size_t N = std::size_t(n_atoms);
    const std::size_t nmax = std::size_t(photon_cutoff);
    const std::size_t dim = (nmax + 1) * (N + 1);
    if (dim > dense_dimension_cap)
        throw DimensionTooLarge("dense dimension " + std::to_string(dim) + " exceeds cap "
                                + std::to_string(dense_dimension_cap));

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(long(dim), long(dim));
    const double g = lambda / std::sqrt(double(N));
    for (std::size_t n = 0; n <= nmax; ++n) {
        for (std::size_t q = 0; q <= N; ++q) {
            const long i = long(n * (N + 1) + q);
            h(i, i) = p.omega * double(n) + 0.5 * p.omega0 * (double(q) - 0.5 * double(N));
            if (n >= 1 && q + 1 <= N) {
                const long j = long((n - 1) * (N + 1) + q + 1);
                const double v =
                    g * std::sqrt(double(n)) * std::sqrt(double(N - q) * double(q + 1));
                h(i, j) = v;
                h(j, i) = v;
            }
        }
    }
    return h;
}

// All eigenvalues of the truncated Hamiltonian, ascending.
inline std::vector<double> dense_oracle(const ModelParams& p, long long n_atoms, double lambda,
                                        long long photon_cutoff) {
    const Eigen::MatrixXd h = dense_hamiltonian(p, n_atoms, lambda, photon_cutoff);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NoConvergence("dense eigensolver failed at n_atoms = " + std::to_string(n_atoms)
                            + ", lambda = " + std::to_string(lambda));
    std::vector<double> ev(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(ev.begin(), ev.end());
    return ev;
}

} // namespace dicke
