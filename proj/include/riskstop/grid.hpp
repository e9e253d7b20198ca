#pragma once

#include <cstddef>
#include <vector>

#include "riskstop/common.hpp"

namespace riskstop {

/// Product grid of strictly increasing coordinate axes. States are flat
/// indices in row-major order (last dimension fastest); helpers convert
/// between flat indices, multi-indices and coordinate tuples.
class StateGrid {
public:
    explicit StateGrid(std::vector<numvec> axes);

    std::size_t dims() const { return axes_.size(); }
    std::size_t size() const { return size_; }
    bool scalar() const { return axes_.size() == 1; }
    const numvec& axis(std::size_t d) const { return axes_.at(d); }
    const std::vector<numvec>& axes() const { return axes_; }

    std::vector<std::size_t> to_multi(std::size_t flat) const;
    std::size_t to_flat(const std::vector<std::size_t>& multi) const;

    /// Coordinates of the state with the given flat index.
    numvec point(std::size_t flat) const;

    /// All grid points by flat index; handy for dominance comparisons.
    std::vector<numvec> points() const;

    /// Componentwise partial order on states.
    bool less_equal(std::size_t a, std::size_t b) const;

    /// Nearest grid point to an arbitrary coordinate tuple, per dimension,
    /// with exact midpoints resolved to the lower grid point. Returns the
    /// flat index; `displacement`, when non-null, receives the Euclidean
    /// distance between the input and the chosen grid point.
    std::size_t project(const numvec& x, double* displacement = nullptr) const;

    bool operator==(const StateGrid& o) const { return axes_ == o.axes_; }
    bool operator!=(const StateGrid& o) const { return !(*this == o); }

private:
    std::vector<numvec> axes_;
    std::vector<std::size_t> strides_;
    std::size_t size_ = 0;
};

/// Evenly spaced axis with `count` points spanning [lo, hi].
numvec linspace(double lo, double hi, std::size_t count);

/// Geometrically spaced axis: start, start*ratio, ..., `count` points.
numvec geomspace(double start, double ratio, std::size_t count);

}  // namespace riskstop
