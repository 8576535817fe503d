// Finite-size convergence of the exact-diagonalization geometric phase toward
// the mean-field value at a fixed superradiant coupling.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "dicke/model.hpp"
#include "dicke/sector_ed.hpp"

int main() {
    const dicke::ModelParams p = dicke::validate_params(1.0, 1.0);
    const double lambda = 1.2;
    const double target = dicke::gp_per_atom(p, lambda);
    std::printf("lambda = %.2f, mean-field gp/N = %.10f\n", lambda, target);
    std::printf("%6s %8s %16s %12s\n", "N", "M*", "gp/N (ED)", "|gap|");
    for (std::size_t n : {8, 16, 32, 64, 128}) {
        const dicke::EDGroundState g = dicke::ground_state(p, (long long)n, lambda);
        const double gp = 2.0 * std::numbers::pi * g.photon_expectation / double(n);
        std::printf("%6zu %8zu %16.10f %12.3e\n", n, g.sector, gp, std::abs(gp - target));
    }
    return 0;
}
