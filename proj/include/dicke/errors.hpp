#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dicke {

// Base class for every domain error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A frequency or other strictly-positive model parameter was <= 0 or non-finite.
class NonPositiveParameter : public Error {
public:
    using Error::Error;
};

// Coupling strengths must satisfy lambda >= 0.
class NegativeCoupling : public Error {
public:
    using Error::Error;
};

// Atomic displacement out of the Holstein-Primakoff domain (beta^2 must stay below 1).
class BetaOutOfRange : public Error {
public:
    using Error::Error;
};

// Sector labels: n_atoms >= 1, excitation number >= 0, cutoffs >= 0.
class InvalidSector : public Error {
public:
    using Error::Error;
};

// An iterative eigenvalue routine exhausted its budget.
class NoConvergence : public Error {
public:
    using Error::Error;
};

// The sector scan's minimum landed on the last scanned sector, so the true
// ground sector may lie beyond the bound. Raising m_max_factor widens the scan.
class ScanBoundaryHit : public Error {
public:
    using Error::Error;
};

// Pancharatnam loop discretization too coarse for the state's photon content.
// Carries the smallest admissible step count.
class StepCountTooSmall : public Error {
public:
    StepCountTooSmall(const std::string& what, std::size_t min_admissible)
        : Error(what), min_steps(min_admissible) {}
    std::size_t min_steps;
};

// Grid-based estimators need a minimum number of points.
class GridTooSmall : public Error {
public:
    using Error::Error;
};

// Finite-difference stencils here assume uniform spacing.
class NonUniformGrid : public Error {
public:
    using Error::Error;
};

// The lambda grid does not bracket the feature being located, or the data
// carry no usable curvature signal.
class GridDoesNotBracket : public Error {
public:
    using Error::Error;
};

// Dense brute-force diagonalization refuses oversized matrices.
class DimensionTooLarge : public Error {
public:
    using Error::Error;
};

// CLI / config-file validation failure; message names the offending field.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Filesystem failure while writing or reading a result.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace dicke
