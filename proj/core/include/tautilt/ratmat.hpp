#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tautilt {

using Rat = mpq_class;

/// Dense exact matrix over Q. Degenerate shapes (0 x n, n x 0) are valid and
/// occur routinely (zero representations, empty Hom spaces).
class RatMatrix {
  public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static RatMatrix identity(std::size_t n);
    static RatMatrix zero(std::size_t rows, std::size_t cols) { return RatMatrix(rows, cols); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Rat& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    bool is_zero() const;
    bool operator==(const RatMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    RatMatrix transpose() const;
    RatMatrix operator*(const RatMatrix& o) const;
    RatMatrix operator+(const RatMatrix& o) const;
    RatMatrix operator-(const RatMatrix& o) const;
    RatMatrix scaled(const Rat& s) const;

    std::vector<Rat> apply(const std::vector<Rat>& v) const;

    std::size_t rank() const;

    /// Pivot columns of the reduced row echelon form.
    std::vector<std::size_t> rref_pivot_columns() const;

    /// Columns span the null space; column count is cols() - rank().
    RatMatrix kernel_basis() const;

    /// Surjective q with q * this = 0 and rank(q) = rows() - rank().
    RatMatrix cokernel_projection() const;

    /// One solution of this * x = b, or nullopt when inconsistent.
    std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const;

    /// Columnwise solve of this * X = B; ok=false when any column is inconsistent.
    RatMatrix solve_matrix(const RatMatrix& b, bool& ok) const;

    RatMatrix inverse() const;  // throws on singular input
    Rat determinant() const;

    std::string to_string() const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

RatMatrix hstack(const RatMatrix& a, const RatMatrix& b);
RatMatrix vstack(const RatMatrix& a, const RatMatrix& b);

/// Block-diagonal stack (direct sum of linear maps).
RatMatrix diag_block(const std::vector<RatMatrix>& blocks);

}  // namespace tautilt
