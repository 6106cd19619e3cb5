// Sampled fields over a Grid1D. A Field is a grid plus an Eigen vector of
// values; RealField and ComplexField are the two instantiations used
// throughout. Fields are value types: operations return fresh fields.
#pragma once

#include <complex>
#include <type_traits>

#include <Eigen/Core>

#include "freewave/errors.hpp"
#include "freewave/grid.hpp"

namespace freewave {

template <typename Scalar>
struct Field {
    using Vector = Eigen::Vector<Scalar, Eigen::Dynamic>;

    Grid1D grid;
    Vector values;

    Field() = default;
    Field(const Grid1D& g, Vector v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.n)
            throw InvalidArgumentError("field length does not match grid");
    }

    static Field zero(const Grid1D& g) { return Field(g, Vector::Zero(g.n)); }

    static Field constant(const Grid1D& g, Scalar c) {
        return Field(g, Vector::Constant(g.n, c));
    }

    /// Sample a callable f(x) at every grid point.
    template <typename F>
    static Field sample(const Grid1D& g, F&& f) {
        Vector v(g.n);
        for (int i = 0; i < g.n; ++i) v[i] = f(g.x(i));
        return Field(g, std::move(v));
    }

    bool all_finite() const {
        if constexpr (std::is_same_v<Scalar, std::complex<double>>) {
            return values.real().allFinite() && values.imag().allFinite();
        } else {
            return values.allFinite();
        }
    }

    void require_finite(const char* what = "field") const {
        if (!all_finite()) throw NonFiniteError(std::string(what) + " contains NaN/Inf");
    }
};

using RealField = Field<double>;
using ComplexField = Field<std::complex<double>>;

}  // namespace freewave
