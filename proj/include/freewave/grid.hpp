// Physical constants and the uniform 1D sample domain all fields live on.
#pragma once

#include <cmath>

#include "freewave/errors.hpp"

namespace freewave {

/// hbar and particle mass, both strictly positive. Defaults are the
/// nondimensional hbar = m = 1 convention used throughout the test suite.
struct Units {
    double hbar = 1.0;
    double mass = 1.0;

    void validate() const {
        if (!(hbar > 0.0) || !std::isfinite(hbar))
            throw InvalidArgumentError("hbar must be finite and > 0");
        if (!(mass > 0.0) || !std::isfinite(mass))
            throw InvalidArgumentError("mass must be finite and > 0");
    }
};

/// Uniform grid of n samples on [x_min, x_max], endpoints included.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    int n = 0;

    double dx() const { return (x_max - x_min) / static_cast<double>(n - 1); }
    double x(int i) const { return x_min + static_cast<double>(i) * dx(); }
    bool same_as(const Grid1D& o) const {
        return x_min == o.x_min && x_max == o.x_max && n == o.n;
    }
};

inline Grid1D make_grid(double x_min, double x_max, int n) {
    if (!(std::isfinite(x_min) && std::isfinite(x_max)))
        throw InvalidArgumentError("grid bounds must be finite");
    if (!(x_max > x_min))
        throw InvalidArgumentError("invalid bounds: x_max must exceed x_min");
    if (n < 8)
        throw InvalidArgumentError("too few points: need n >= 8");
    return Grid1D{x_min, x_max, n};
}

}  // namespace freewave
