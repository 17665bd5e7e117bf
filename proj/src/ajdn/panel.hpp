#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ajdn {

// Immutable n x p panel of observations. Storage is dimension-major so each
// series is contiguous. Time indices in the public API are 1-based grid
// indices i (time i/n); series(r)[i - 1] is observation y_{r,i}.
class Panel {
public:
    Panel() = default;
    // `dimension_major` holds p blocks of n values.
    Panel(std::size_t n, std::size_t p, std::vector<double> dimension_major);

    static Panel from_rows(std::size_t n, std::size_t p, std::span<const double> row_major);
    static Panel zeros(std::size_t n, std::size_t p);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t p() const noexcept { return p_; }
    [[nodiscard]] bool empty() const noexcept { return n_ == 0 || p_ == 0; }

    [[nodiscard]] std::span<const double> series(std::size_t r) const;
    // 1-based time index.
    [[nodiscard]] double at(std::size_t r, std::size_t i) const { return data_[r * n_ + i - 1]; }
    [[nodiscard]] std::span<const double> values() const noexcept { return data_; }

    // Returns a copy with dimension r multiplied by `factor`.
    [[nodiscard]] Panel scaled_dimension(std::size_t r, double factor) const;
    // Returns a copy with dimensions reordered: result dimension k is this dimension order[k].
    [[nodiscard]] Panel permuted(std::span<const std::size_t> order) const;

    friend bool operator==(const Panel&, const Panel&) = default;

private:
    std::size_t n_ = 0;
    std::size_t p_ = 0;
    std::vector<double> data_;
};

// Builder for panels produced column by column (simulation, scenario injection).
class PanelBuilder {
public:
    PanelBuilder(std::size_t n, std::size_t p) : n_(n), p_(p), data_(n * p, 0.0) {}
    explicit PanelBuilder(const Panel& from);

    [[nodiscard]] std::span<double> series(std::size_t r) { return {data_.data() + r * n_, n_}; }
    double& at(std::size_t r, std::size_t i) { return data_[r * n_ + i - 1]; }
    [[nodiscard]] Panel build() &&;

private:
    std::size_t n_;
    std::size_t p_;
    std::vector<double> data_;
};

// Grid arithmetic. Membership i/n in a closed interval is decided on integer
// indices; the tolerance absorbs representation error in products like n * s.
inline constexpr double kIndexTolerance = 1e-9;

// Smallest integer i with i >= n * a.
long index_ceil(std::size_t n, double a);
// Largest integer i with i <= n * b.
long index_floor(std::size_t n, double b);
// floor(n * s) with tolerance: largest offset d with d / n <= s.
std::size_t offset_floor(std::size_t n, double s);

} // namespace ajdn
