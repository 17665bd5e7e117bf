#include "ajdn/panel.hpp"

#include "ajdn/errors.hpp"

#include <cmath>
#include <string>

namespace ajdn {

Panel::Panel(std::size_t n, std::size_t p, std::vector<double> dimension_major)
    : n_(n), p_(p), data_(std::move(dimension_major)) {
    require(data_.size() == n * p, "panel storage size " + std::to_string(data_.size()) + " does not match n*p = " +
                                       std::to_string(n * p));
}

Panel Panel::from_rows(std::size_t n, std::size_t p, std::span<const double> row_major) {
    require(row_major.size() == n * p, "row-major buffer size does not match n*p");
    std::vector<double> data(n * p);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < p; ++r) {
            data[r * n + i] = row_major[i * p + r];
        }
    }
    return Panel(n, p, std::move(data));
}

Panel Panel::zeros(std::size_t n, std::size_t p) { return Panel(n, p, std::vector<double>(n * p, 0.0)); }

std::span<const double> Panel::series(std::size_t r) const {
    require(r < p_, "dimension index " + std::to_string(r) + " out of range (p = " + std::to_string(p_) + ")");
    return {data_.data() + r * n_, n_};
}

Panel Panel::scaled_dimension(std::size_t r, double factor) const {
    require(r < p_, "dimension index out of range");
    auto data = data_;
    for (std::size_t i = 0; i < n_; ++i) {
        data[r * n_ + i] *= factor;
    }
    return Panel(n_, p_, std::move(data));
}

Panel Panel::permuted(std::span<const std::size_t> order) const {
    require(order.size() == p_, "permutation length must equal p");
    std::vector<double> data(data_.size());
    for (std::size_t k = 0; k < p_; ++k) {
        require(order[k] < p_, "permutation entry out of range");
        auto src = series(order[k]);
        std::copy(src.begin(), src.end(), data.begin() + static_cast<std::ptrdiff_t>(k * n_));
    }
    return Panel(n_, p_, std::move(data));
}

PanelBuilder::PanelBuilder(const Panel& from) : n_(from.n()), p_(from.p()), data_(from.values().begin(), from.values().end()) {}

Panel PanelBuilder::build() && { return Panel(n_, p_, std::move(data_)); }

long index_ceil(std::size_t n, double a) {
    return static_cast<long>(std::ceil(static_cast<double>(n) * a - kIndexTolerance));
}

long index_floor(std::size_t n, double b) {
    return static_cast<long>(std::floor(static_cast<double>(n) * b + kIndexTolerance));
}

std::size_t offset_floor(std::size_t n, double s) {
    const long d = index_floor(n, s);
    return d < 0 ? 0 : static_cast<std::size_t>(d);
}

} // namespace ajdn
