#include "edlgp/core/matrix.hpp"

#include <algorithm>

#include "edlgp/core/error.hpp"

namespace edlgp {

Matrix gather_rows(Matrix const& m, std::span<std::size_t const> rows)
{
    Matrix out(rows.size(), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto src = m.row(rows[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

Matrix hconcat(Matrix const& a, Matrix const& b)
{
    if (a.rows() != b.rows()) {
        throw InternalError("hconcat: row count mismatch");
    }
    Matrix out(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        auto dst = out.row(r);
        auto ra = a.row(r);
        auto rb = b.row(r);
        std::copy(ra.begin(), ra.end(), dst.begin());
        std::copy(rb.begin(), rb.end(), dst.begin() + static_cast<std::ptrdiff_t>(a.cols()));
    }
    return out;
}

} // namespace edlgp
