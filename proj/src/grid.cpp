#include "riskstop/grid.hpp"

#include <cmath>

namespace riskstop {

StateGrid::StateGrid(std::vector<numvec> axes) : axes_(std::move(axes)) {
    detail::require(!axes_.empty(), "StateGrid: no axes");
    size_ = 1;
    for (const numvec& axis : axes_) {
        detail::require(!axis.empty(), "StateGrid: empty axis");
        for (std::size_t i = 0; i < axis.size(); ++i) {
            detail::require(std::isfinite(axis[i]),
                            "StateGrid: coordinate is not finite");
            detail::require(i == 0 || axis[i - 1] < axis[i],
                            "StateGrid: axis must be strictly increasing");
        }
        size_ *= axis.size();
    }
    strides_.assign(axes_.size(), 1);
    for (std::size_t d = axes_.size(); d-- > 1;)
        strides_[d - 1] = strides_[d] * axes_[d].size();
}

std::vector<std::size_t> StateGrid::to_multi(std::size_t flat) const {
    detail::require(flat < size_, "StateGrid: flat index out of range");
    std::vector<std::size_t> multi(axes_.size());
    for (std::size_t d = 0; d < axes_.size(); ++d) {
        multi[d] = flat / strides_[d];
        flat %= strides_[d];
    }
    return multi;
}

std::size_t StateGrid::to_flat(const std::vector<std::size_t>& multi) const {
    detail::require(multi.size() == axes_.size(),
                    "StateGrid: multi-index has wrong rank");
    std::size_t flat = 0;
    for (std::size_t d = 0; d < axes_.size(); ++d) {
        detail::require(multi[d] < axes_[d].size(),
                        "StateGrid: multi-index out of range");
        flat += multi[d] * strides_[d];
    }
    return flat;
}

numvec StateGrid::point(std::size_t flat) const {
    const auto multi = to_multi(flat);
    numvec x(axes_.size());
    for (std::size_t d = 0; d < axes_.size(); ++d) x[d] = axes_[d][multi[d]];
    return x;
}

std::vector<numvec> StateGrid::points() const {
    std::vector<numvec> all;
    all.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) all.push_back(point(i));
    return all;
}

bool StateGrid::less_equal(std::size_t a, std::size_t b) const {
    const auto ma = to_multi(a);
    const auto mb = to_multi(b);
    for (std::size_t d = 0; d < ma.size(); ++d)
        if (ma[d] > mb[d]) return false;
    return true;
}

std::size_t StateGrid::project(const numvec& x, double* displacement) const {
    detail::require(x.size() == axes_.size(),
                    "StateGrid: point has wrong dimension");
    std::vector<std::size_t> multi(axes_.size());
    double dist2 = 0.0;
    for (std::size_t d = 0; d < axes_.size(); ++d) {
        const numvec& axis = axes_[d];
        // First coordinate >= x[d]; candidates are it and its predecessor.
        std::size_t hi = 0;
        while (hi < axis.size() && axis[hi] < x[d]) ++hi;
        std::size_t pick;
        if (hi == 0) {
            pick = 0;
        } else if (hi == axis.size()) {
            pick = axis.size() - 1;
        } else {
            const double below = x[d] - axis[hi - 1];
            const double above = axis[hi] - x[d];
            // Ties go to the lower grid point.
            pick = (above < below) ? hi : hi - 1;
        }
        multi[d] = pick;
        const double diff = x[d] - axis[pick];
        dist2 += diff * diff;
    }
    if (displacement != nullptr) *displacement = std::sqrt(dist2);
    return to_flat(multi);
}

numvec linspace(double lo, double hi, std::size_t count) {
    detail::require(count >= 2, "linspace: need at least two points");
    detail::require(lo < hi, "linspace: lo must be below hi");
    numvec out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) /
                          static_cast<double>(count - 1);
    return out;
}

numvec geomspace(double start, double ratio, std::size_t count) {
    detail::require(count >= 1, "geomspace: need at least one point");
    detail::require(start > 0.0 && ratio > 1.0,
                    "geomspace: start must be positive and ratio above 1");
    numvec out(count);
    double v = start;
    for (std::size_t i = 0; i < count; ++i, v *= ratio) out[i] = v;
    return out;
}

}  // namespace riskstop
