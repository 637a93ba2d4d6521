#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace edlgp {

// Dense row-major matrix of doubles. Rows are instances, columns features
// (FeatureMatrix) or classes (ProbabilityMatrix).
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows)
        , cols_(cols)
        , data_(rows * cols, fill)
    {
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool empty() const noexcept { return rows_ == 0; }

    [[nodiscard]] double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    [[nodiscard]] double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    [[nodiscard]] std::span<double> row(std::size_t r) noexcept { return { data_.data() + r * cols_, cols_ }; }
    [[nodiscard]] std::span<double const> row(std::size_t r) const noexcept { return { data_.data() + r * cols_, cols_ }; }

    [[nodiscard]] std::span<double> data() noexcept { return data_; }
    [[nodiscard]] std::span<double const> data() const noexcept { return data_; }

    [[nodiscard]] std::size_t memory_bytes() const noexcept { return data_.size() * sizeof(double); }

    bool operator==(Matrix const&) const = default;

private:
    std::size_t rows_ { 0 };
    std::size_t cols_ { 0 };
    std::vector<double> data_;
};

using FeatureMatrix = Matrix;
using ProbabilityMatrix = Matrix;

[[nodiscard]] Matrix gather_rows(Matrix const& m, std::span<std::size_t const> rows);

// [a | b], both with the same row count.
[[nodiscard]] Matrix hconcat(Matrix const& a, Matrix const& b);

} // namespace edlgp
