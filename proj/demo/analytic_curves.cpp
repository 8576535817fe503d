// Minimal library usage: print the mean-field order parameters, ground energy
// and geometric phase per atom across the transition at resonance.

#include <cstdio>

#include "dicke/model.hpp"

int main() {
    const dicke::ModelParams p = dicke::validate_params(1.0, 1.0);
    std::printf("lambda_c = %.12f\n", dicke::critical_coupling(p));
    std::printf("%8s %12s %12s %14s %14s\n", "lambda", "alpha", "beta", "e0/N", "gp/N");
    for (double lambda = 0.0; lambda <= 1.4000001; lambda += 0.1) {
        const dicke::MeanFieldSolution mf = dicke::mean_field(p, lambda);
        std::printf("%8.2f %12.8f %12.8f %14.10f %14.10f\n", lambda, mf.alpha, mf.beta,
                    dicke::ground_energy_per_atom(p, lambda), dicke::gp_per_atom(p, lambda));
    }
    return 0;
}
