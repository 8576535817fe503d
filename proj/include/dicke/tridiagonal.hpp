#pragma once

// Symmetric tridiagonal eigensolver used by the sector diagonalization:
// eigenvalues by Sturm-count bisection, ground vector by inverse iteration
// with a partially pivoted tridiagonal solve. Self-contained on purpose so the
// dense brute-force oracle stays an independent cross-check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "dicke/errors.hpp"

namespace dicke {

struct TridiagonalMatrix {
    std::vector<double> diag;
    std::vector<double> offdiag; // couples i and i+1; size() == diag.size() - 1

    std::size_t size() const noexcept { return diag.size(); }
};

struct EigenPair {
    double value;
    std::vector<double> vector; // unit norm, largest-magnitude component positive
};

namespace detail {

inline void check_shape(const TridiagonalMatrix& t) {
    if (t.diag.empty())
        throw std::invalid_argument("tridiagonal matrix must be nonempty");
    if (t.offdiag.size() + 1 != t.diag.size())
        throw std::invalid_argument("offdiag size must be diag size - 1");
}

// Gershgorin interval containing the whole spectrum.
inline void spectrum_bounds(const TridiagonalMatrix& t, double& lo, double& hi) {
    const std::size_t n = t.size();
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(t.offdiag[i - 1]);
        if (i + 1 < n) r += std::abs(t.offdiag[i]);
        lo = std::min(lo, t.diag[i] - r);
        hi = std::max(hi, t.diag[i] + r);
    }
}

inline double scale_of(const TridiagonalMatrix& t) {
    double s = 0.0;
    for (double d : t.diag) s = std::max(s, std::abs(d));
    for (double b : t.offdiag) s = std::max(s, std::abs(b));
    return s;
}

// Number of eigenvalues strictly below x, from the signs of the LDL^T pivots.
// A vanishing pivot counts as negative; that boundary convention only shifts
// bisection by one ulp.
inline std::size_t count_below(const TridiagonalMatrix& t, double x, double pivmin) {
    const std::size_t n = t.size();
    std::size_t cnt = 0;
    double d = t.diag[0] - x;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++cnt;
    for (std::size_t i = 1; i < n; ++i) {
        d = t.diag[i] - x - t.offdiag[i - 1] * t.offdiag[i - 1] / d;
        if (std::abs(d) < pivmin) d = -pivmin;
        if (d < 0.0) ++cnt;
    }
    return cnt;
}

inline double bisection_pivmin(const TridiagonalMatrix& t) {
    double bmax = 0.0;
    for (double b : t.offdiag) bmax = std::max(bmax, b * b);
    const double safmin = std::numeric_limits<double>::min();
    return std::max(safmin, safmin * bmax);
}

// Solve (T - sigma I) y = rhs in place by Gaussian elimination with row
// swaps; the swap fills a second superdiagonal. Pivots are floored away from
// zero so a near-singular shift (the whole point of inverse iteration) yields
// a huge but finite solution.
inline void shifted_solve(const TridiagonalMatrix& t, double sigma, double piv_floor,
                          std::vector<double>& y) {
    const std::size_t n = t.size();
    std::vector<double> dia(n), upp(n > 1 ? n - 1 : 0), upp2(n > 2 ? n - 2 : 0, 0.0);
    for (std::size_t i = 0; i < n; ++i) dia[i] = t.diag[i] - sigma;
    for (std::size_t i = 0; i + 1 < n; ++i) upp[i] = t.offdiag[i];

    const auto floor_pivot = [piv_floor](double p) {
        if (std::abs(p) < piv_floor) return p < 0.0 ? -piv_floor : piv_floor;
        return p;
    };

    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double low = t.offdiag[i];
        if (std::abs(dia[i]) >= std::abs(low)) {
            dia[i] = floor_pivot(dia[i]);
            const double m = low / dia[i];
            dia[i + 1] -= m * upp[i];
            y[i + 1] -= m * y[i];
        } else {
            // swap rows i and i+1; row i had no entry in column i+2 yet
            const double m = dia[i] / low;
            const double d1 = dia[i + 1];
            const double u1 = (i + 2 < n) ? upp[i + 1] : 0.0;
            dia[i] = low;
            const double old_upp = upp[i];
            upp[i] = d1;
            if (i + 2 < n) {
                upp2[i] = u1;
                upp[i + 1] = -m * u1;
            }
            dia[i + 1] = old_upp - m * d1;
            std::swap(y[i], y[i + 1]);
            y[i + 1] -= m * y[i];
        }
    }
    dia[n - 1] = floor_pivot(dia[n - 1]);

    y[n - 1] /= dia[n - 1];
    if (n == 1) return;
    y[n - 2] = (y[n - 2] - upp[n - 2] * y[n - 1]) / dia[n - 2];
    for (std::size_t i = n - 2; i-- > 0;)
        y[i] = (y[i] - upp[i] * y[i + 1] - upp2[i] * y[i + 2]) / dia[i];
}

inline void normalize(std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    if (m == 0.0) return;
    double s = 0.0;
    for (double& x : v) {
        x /= m;
        s += x * x;
    }
    s = std::sqrt(s);
    for (double& x : v) x /= s;
}

inline void apply(const TridiagonalMatrix& t, const std::vector<double>& v,
                  std::vector<double>& out) {
    const std::size_t n = t.size();
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = t.diag[i] * v[i];
        if (i > 0) s += t.offdiag[i - 1] * v[i - 1];
        if (i + 1 < n) s += t.offdiag[i] * v[i + 1];
        out[i] = s;
    }
}

} // namespace detail

// k-th eigenvalue in ascending order (0-based), handling multiplicities via
// the Sturm count. Bisection halves a Gershgorin interval until it collapses
// to rounding width.
inline double eigenvalue_at(const TridiagonalMatrix& t, std::size_t k) {
    detail::check_shape(t);
    const std::size_t n = t.size();
    if (k >= n)
        throw std::invalid_argument("eigenvalue index " + std::to_string(k)
                                    + " out of range for dimension " + std::to_string(n));
    if (n == 1) return t.diag[0];

    double lo, hi;
    detail::spectrum_bounds(t, lo, hi);
    const double pivmin = detail::bisection_pivmin(t);
    const double eps = std::numeric_limits<double>::epsilon();

    for (int iter = 0; iter < 300; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // interval collapsed to adjacent doubles
        if (detail::count_below(t, mid, pivmin) >= k + 1)
            hi = mid;
        else
            lo = mid;
        const double tol = 4.0 * eps * std::max(std::abs(lo), std::abs(hi));
        if (hi - lo <= tol) break;
    }
    return 0.5 * (lo + hi);
}

inline double smallest_eigenvalue(const TridiagonalMatrix& t) {
    return eigenvalue_at(t, 0);
}

inline std::vector<double> all_eigenvalues(const TridiagonalMatrix& t) {
    detail::check_shape(t);
    std::vector<double> ev(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) ev[k] = eigenvalue_at(t, k);
    return ev;
}

// Ground eigenpair: Sturm bisection for the value, inverse iteration for the
// vector, then an explicit residual certificate ||Tv - Ev|| <= 1e-10 max(1,|E|).
inline EigenPair sector_ground(const TridiagonalMatrix& t) {
    detail::check_shape(t);
    const std::size_t n = t.size();
    if (n == 1) return EigenPair{t.diag[0], {1.0}};

    const double value = eigenvalue_at(t, 0);
    const double scale = detail::scale_of(t);
    const double eps = std::numeric_limits<double>::epsilon();
    // Floor keeps 1/pivot below ~1e292, so solutions stay finite.
    const double piv_floor = std::max(eps * scale, 2.3e-292);

    std::vector<double> v(n), prev(n), tv;
    const double residual_bound = 1e-10 * std::max(1.0, std::abs(value));

    for (int attempt = 0; attempt < 2; ++attempt) {
        // Deterministic start vectors; the second is used only if the first
        // stalls (e.g. starts orthogonal to the ground vector).
        for (std::size_t i = 0; i < n; ++i)
            v[i] = attempt == 0 ? 1.0 : 1.0 + 0.3 * std::sin(double(i) + 1.0);
        detail::normalize(v);

        for (int iter = 0; iter < 8; ++iter) {
            prev = v;
            detail::shifted_solve(t, value, piv_floor, v);
            bool finite = true;
            for (double x : v)
                if (!std::isfinite(x)) { finite = false; break; }
            if (!finite) { v = prev; break; }
            detail::normalize(v);

            double align = 0.0;
            for (std::size_t i = 0; i < n; ++i) align += v[i] * prev[i];
            if (std::abs(align) > 1.0 - 1e-12 && iter > 0) break;
        }

        detail::apply(t, v, tv);
        double res = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = tv[i] - value * v[i];
            res += r * r;
        }
        res = std::sqrt(res);
        if (res <= residual_bound) {
            std::size_t imax = 0;
            for (std::size_t i = 1; i < n; ++i)
                if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
            if (v[imax] < 0.0)
                for (double& x : v) x = -x;
            return EigenPair{value, v};
        }
    }
    throw NoConvergence("inverse iteration failed to reach residual bound for dimension "
                        + std::to_string(n));
}

} // namespace dicke
