// Sweeps, finite-difference slopes, the curvature estimator of the critical
// coupling, the scaling fit, and byte determinism across worker counts.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "dicke/crit.hpp"
#include "dicke/model.hpp"
#include "dicke/table.hpp"

using namespace dicke;
using std::numbers::pi;

namespace {
const ModelParams res = validate_params(1.0, 1.0);
const double lc = std::sqrt(0.5);

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    const double h = (hi - lo) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo + h * double(i);
    return g;
}
} // namespace

TEST_CASE("sweep: structure and frozen endpoints") {
    SECTION("single atom, normal phase") {
        const SweepResult s = sweep(res, {1}, {0.3});
        REQUIRE(s.ed.size() == 1);
        REQUIRE(s.ed[0].size() == 1);
        CHECK(std::abs(s.ed[0][0].e0_per_atom - (-0.25)) <= 1e-12);
        CHECK(s.ed[0][0].gp_per_atom == 0.0);
        CHECK(s.ed[0][0].sector == 0);
        CHECK(s.ed[0][0].scan_limit > 0);
    }
    SECTION("analytic columns") {
        const SweepResult s = sweep(res, {4}, {0.5, 1.0});
        CHECK(std::abs(s.analytic[0].e0_per_atom - (-0.25)) <= 1e-15);
        CHECK(s.analytic[0].gp_per_atom == 0.0);
        CHECK(std::abs(s.analytic[1].gp_per_atom - 1.1780972450961724) <= 1e-13);
        CHECK(std::abs(s.analytic[1].e0_per_atom - (-0.3125)) <= 1e-15);
    }
    SECTION("input validation") {
        CHECK_THROWS_AS(sweep(res, {}, {0.5}), std::invalid_argument);
        CHECK_THROWS_AS(sweep(res, {4, 4}, {0.5}), std::invalid_argument);
        CHECK_THROWS_AS(sweep(res, {4, 2}, {0.5}), std::invalid_argument);
        CHECK_THROWS_AS(sweep(res, {4}, {}), std::invalid_argument);
        CHECK_THROWS_AS(sweep(res, {4}, {0.5, 0.5}), std::invalid_argument);
        CHECK_THROWS_AS(sweep(res, {0}, {0.5}), std::invalid_argument);
    }
    SECTION("worker failures propagate the lowest-index item's error") {
        try {
            sweep(res, {8}, {2.0, 2.5}, ScanPolicy{0.2}, 4);
            FAIL("expected ScanBoundaryHit");
        } catch (const ScanBoundaryHit& e) {
            const std::string msg = e.what();
            CHECK(msg.find("n_atoms = 8") != std::string::npos);
            CHECK(msg.find("lambda = 2.0") != std::string::npos);
        }
    }
}

TEST_CASE("analytic curve shape across the transition") {
    const std::vector<double> grid = uniform_grid(0.0, 2.0, 41);
    const SweepResult s = sweep(res, {1}, grid); // tiny ED side, analytic is the target
    std::vector<double> gp(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) gp[i] = s.analytic[i].gp_per_atom;

    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] <= lc) {
            CHECK(gp[i] == 0.0);
        }
    }
    // strictly increasing past the transition; convex once the 1/lambda^2
    // term has decayed (second derivative changes sign at 3^(1/4) lambda_c)
    const double convex_from = std::pow(3.0, 0.25) * lc;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        if (grid[i - 1] >= lc) CHECK(gp[i] > gp[i - 1]);
        if (grid[i - 1] >= convex_from) CHECK(gp[i + 1] - 2.0 * gp[i] + gp[i - 1] > 0.0);
    }
}

TEST_CASE("derivative series") {
    SECTION("constants and lines") {
        const std::vector<double> g = uniform_grid(0.0, 1.0, 11);
        const std::vector<double> c(11, 3.5);
        for (double d : derivative_series(g, c)) CHECK(std::abs(d) <= 1e-12);
        const std::vector<double> lin(g);
        for (double d : derivative_series(g, lin)) CHECK(std::abs(d - 1.0) <= 1e-12);
    }
    SECTION("central differences are exact on quadratics") {
        const std::vector<double> g = uniform_grid(-1.0, 1.0, 21);
        std::vector<double> q(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) q[i] = g[i] * g[i];
        const std::vector<double> d = derivative_series(g, q);
        for (std::size_t i = 1; i + 1 < g.size(); ++i)
            CHECK(std::abs(d[i] - 2.0 * g[i]) <= 1e-12);
    }
    SECTION("slope just above the transition approaches the critical slope") {
        const double h = 1e-3;
        std::vector<double> g(100), v(100);
        for (std::size_t i = 0; i < 100; ++i) {
            g[i] = lc + h * double(i + 1);
            v[i] = gp_per_atom(res, g[i]);
        }
        const std::vector<double> d = derivative_series(g, v);
        CHECK(std::abs(d[0] - 4.4429) <= 0.02);
    }
    SECTION("validation") {
        CHECK_THROWS_AS(derivative_series({0.0, 1.0}, {0.0, 1.0}), GridTooSmall);
        CHECK_THROWS_AS(derivative_series({0.0, 0.5, 2.0}, {0.0, 1.0, 2.0}), NonUniformGrid);
        CHECK_THROWS_AS(derivative_series({0.0, 0.5}, {0.0, 1.0, 2.0}), std::invalid_argument);
    }
}

TEST_CASE("critical point estimator") {
    SECTION("on the analytic curve the bend sits within one step of lambda_c") {
        const std::vector<double> g = uniform_grid(0.58, 0.84, 53); // h = 0.005
        std::vector<double> v(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) v[i] = gp_per_atom(res, g[i]);
        const double est = estimate_critical_point(g, v);
        CHECK(std::abs(est - lc) <= 0.005 + 1e-12);
    }
    SECTION("flat data have no bend") {
        const std::vector<double> g = uniform_grid(0.0, 1.0, 11);
        const std::vector<double> z(11, 0.0);
        CHECK_THROWS_AS(estimate_critical_point(g, z), GridDoesNotBracket);
    }
    SECTION("too small") {
        CHECK_THROWS_AS(estimate_critical_point({0.1, 0.2}, {0.0, 0.0}), GridTooSmall);
    }
    SECTION("sweep overload checks the bracket and the ladder") {
        const SweepResult s = sweep(res, {4}, uniform_grid(0.8, 1.2, 9));
        CHECK_THROWS_AS(estimate_critical_point(s, 4), GridDoesNotBracket);
        CHECK_THROWS_AS(estimate_critical_point(s, 16), std::invalid_argument);
    }
    SECTION("finite-size estimate drifts toward lambda_c as N grows") {
        const std::vector<double> g = uniform_grid(0.58, 0.84, 53);
        const SweepResult s = sweep(res, {32, 128}, g, ScanPolicy{}, 0);
        const double e32 = estimate_critical_point(s, 32);
        const double e128 = estimate_critical_point(s, 128);
        CHECK(std::abs(e128 - lc) <= std::abs(e32 - lc) + 0.005 + 1e-12);
    }
}

TEST_CASE("linear fit") {
    SECTION("exact line") {
        const LinearFit f = linear_fit({1.0, 2.0, 3.0, 4.0}, {1.5, 3.5, 5.5, 7.5});
        CHECK(std::abs(f.slope - 2.0) <= 1e-13);
        CHECK(std::abs(f.intercept - (-0.5)) <= 1e-13);
        CHECK(std::abs(f.r_squared - 1.0) <= 1e-13);
    }
    SECTION("validation") {
        CHECK_THROWS_AS(linear_fit({1.0}, {1.0}), std::invalid_argument);
        CHECK_THROWS_AS(linear_fit({1.0, 1.0}, {1.0, 2.0}), std::invalid_argument);
        CHECK_THROWS_AS(linear_fit({1.0, 2.0}, {1.0}), std::invalid_argument);
    }
}

TEST_CASE("scaling pipeline on the analytic curve is exactly linear") {
    // Peak slope of the analytic per-atom curve on a fine grid bracketing
    // lambda_c, then the total-phase peak slope N * p is linear in N by
    // construction: the fit must recover slope p exactly with r^2 = 1, and p
    // approximates the critical slope.
    const std::vector<double> g = uniform_grid(0.6, 0.8, 201); // h = 1e-3
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = gp_per_atom(res, g[i]);
    const std::vector<double> d = derivative_series(g, v);
    const double p = *std::max_element(d.begin(), d.end());
    CHECK(std::abs(p - gp_slope_at_critical(res)) / gp_slope_at_critical(res) <= 0.02);

    const std::vector<double> ns = {16.0, 32.0, 64.0, 128.0};
    std::vector<double> totals;
    for (double n : ns) totals.push_back(n * p);
    const LinearFit f = linear_fit(ns, totals);
    CHECK(std::abs(f.slope - p) <= 1e-12 * p);
    CHECK(std::abs(f.intercept) <= 1e-9);
    CHECK(std::abs(f.r_squared - 1.0) <= 1e-12);
}

TEST_CASE("scaling fit on ED data") {
    SECTION("preconditions") {
        CHECK_THROWS_AS(scaling_fit(res, {8, 16, 32}, uniform_grid(0.55, 0.95, 11)),
                        std::invalid_argument);
        CHECK_THROWS_AS(scaling_fit(res, {8, 16, 32, 64}, uniform_grid(0.8, 1.2, 11)),
                        GridDoesNotBracket);
    }
    SECTION("small-ladder smoke run") {
        const ScalingFit f =
            scaling_fit(res, {8, 16, 32, 64}, uniform_grid(0.55, 0.95, 41), ScanPolicy{}, 0);
        REQUIRE(f.peak_slopes.size() == 4);
        for (double p : f.peak_slopes) CHECK(p > 0.0);
        CHECK(f.slope > 0.0);
        CHECK(f.r_squared >= 0.0);
        CHECK(f.r_squared <= 1.0);
    }
}

TEST_CASE("sweep results are byte-identical for any worker count") {
    const std::vector<double> g = uniform_grid(0.3, 1.3, 11);
    const SweepResult a = sweep(res, {8, 16}, g, ScanPolicy{}, 1);
    const SweepResult b = sweep(res, {8, 16}, g, ScanPolicy{}, 7);

    for (std::size_t li = 0; li < a.ed.size(); ++li) {
        for (std::size_t gi = 0; gi < a.ed[li].size(); ++gi) {
            CHECK(a.ed[li][gi].e0_per_atom == b.ed[li][gi].e0_per_atom);
            CHECK(a.ed[li][gi].gp_per_atom == b.ed[li][gi].gp_per_atom);
            CHECK(a.ed[li][gi].sector == b.ed[li][gi].sector);
        }
    }
    std::ostringstream sa, sb;
    write_sweep_csv(sa, a);
    write_sweep_csv(sb, b);
    CHECK(sa.str() == sb.str());
}
