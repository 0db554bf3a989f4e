#include "tautilt/ratmat.hpp"

#include <sstream>
#include <stdexcept>

#include "tautilt/errors.hpp"

namespace tautilt {

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool RatMatrix::is_zero() const {
    for (const auto& x : a_)
        if (x != 0) return false;
    return true;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
    return m;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw InternalError("matrix product shape mismatch");
    RatMatrix m(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& x = at(r, k);
            if (x == 0) continue;
            for (std::size_t c = 0; c < o.cols_; ++c) m.at(r, c) += x * o.at(k, c);
        }
    return m;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InternalError("matrix sum shape mismatch");
    RatMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
    return m;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InternalError("matrix difference shape mismatch");
    RatMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
    return m;
}

RatMatrix RatMatrix::scaled(const Rat& s) const {
    RatMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * s;
    return m;
}

std::vector<Rat> RatMatrix::apply(const std::vector<Rat>& v) const {
    if (v.size() != cols_) throw InternalError("matrix apply shape mismatch");
    std::vector<Rat> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Rat acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) acc += at(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(sel, c), m.at(row, c));
        Rat inv = 1 / m.at(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col) == 0) continue;
            Rat f = m.at(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m.at(r, c) -= f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t RatMatrix::rank() const {
    RatMatrix m = *this;
    return rref(m).size();
}

std::vector<std::size_t> RatMatrix::rref_pivot_columns() const {
    RatMatrix m = *this;
    return rref(m);
}

RatMatrix RatMatrix::kernel_basis() const {
    RatMatrix m = *this;
    std::vector<std::size_t> pivots = rref(m);
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t p : pivots) is_pivot[p] = true;

    std::size_t nullity = cols_ - pivots.size();
    RatMatrix k(cols_, nullity);
    std::size_t kc = 0;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        k.at(free, kc) = 1;
        for (std::size_t pi = 0; pi < pivots.size(); ++pi) k.at(pivots[pi], kc) = -m.at(pi, free);
        ++kc;
    }
    return k;
}

RatMatrix RatMatrix::cokernel_projection() const {
    // Rows of q form a basis of the left null space.
    return transpose().kernel_basis().transpose();
}

std::optional<std::vector<Rat>> RatMatrix::solve(const std::vector<Rat>& b) const {
    if (b.size() != rows_) throw InternalError("solve shape mismatch");
    RatMatrix aug(rows_, cols_ + 1);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
        aug.at(r, cols_) = b[r];
    }
    std::vector<std::size_t> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;  // inconsistent
    std::vector<Rat> x(cols_);
    for (std::size_t pi = 0; pi < pivots.size(); ++pi) x[pivots[pi]] = aug.at(pi, cols_);
    return x;
}

RatMatrix RatMatrix::solve_matrix(const RatMatrix& b, bool& ok) const {
    if (b.rows() != rows_) throw InternalError("solve_matrix shape mismatch");
    ok = true;
    RatMatrix aug(rows_, cols_ + b.cols());
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
        for (std::size_t c = 0; c < b.cols(); ++c) aug.at(r, cols_ + c) = b.at(r, c);
    }
    RatMatrix work = aug;
    std::vector<std::size_t> pivots;
    {
        // Eliminate using only the coefficient columns.
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t sel = row;
            while (sel < rows_ && work.at(sel, col) == 0) ++sel;
            if (sel == rows_) continue;
            if (sel != row)
                for (std::size_t c = 0; c < work.cols(); ++c) std::swap(work.at(sel, c), work.at(row, c));
            Rat inv = 1 / work.at(row, col);
            for (std::size_t c = col; c < work.cols(); ++c) work.at(row, c) *= inv;
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == row || work.at(r, col) == 0) continue;
                Rat f = work.at(r, col);
                for (std::size_t c = col; c < work.cols(); ++c) work.at(r, c) -= f * work.at(row, c);
            }
            pivots.push_back(col);
            ++row;
        }
        // Rows below the last pivot must have zero right-hand side.
        for (std::size_t r = pivots.size(); r < rows_; ++r)
            for (std::size_t c = cols_; c < work.cols(); ++c)
                if (work.at(r, c) != 0) ok = false;
    }
    RatMatrix x(cols_, b.cols());
    for (std::size_t pi = 0; pi < pivots.size(); ++pi)
        for (std::size_t c = 0; c < b.cols(); ++c) x.at(pivots[pi], c) = work.at(pi, cols_ + c);
    return x;
}

RatMatrix RatMatrix::inverse() const {
    if (rows_ != cols_) throw InternalError("inverse of non-square matrix");
    bool ok = true;
    RatMatrix inv = solve_matrix(identity(rows_), ok);
    // solve_matrix leaves free variables at zero, so verify exactly.
    if (!ok || !((*this * inv) == identity(rows_))) throw InternalError("matrix is singular");
    return inv;
}

Rat RatMatrix::determinant() const {
    if (rows_ != cols_) throw InternalError("determinant of non-square matrix");
    RatMatrix m = *this;
    Rat det = 1;
    for (std::size_t col = 0; col < cols_; ++col) {
        std::size_t sel = col;
        while (sel < rows_ && m.at(sel, col) == 0) ++sel;
        if (sel == rows_) return 0;
        if (sel != col) {
            for (std::size_t c = 0; c < cols_; ++c) std::swap(m.at(sel, c), m.at(col, c));
            det = -det;
        }
        det *= m.at(col, col);
        Rat inv = 1 / m.at(col, col);
        for (std::size_t r = col + 1; r < rows_; ++r) {
            if (m.at(r, col) == 0) continue;
            Rat f = m.at(r, col) * inv;
            for (std::size_t c = col; c < cols_; ++c) m.at(r, c) -= f * m.at(col, c);
        }
    }
    return det;
}

std::string RatMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r ? ", [" : "[");
        for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << at(r, c).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

RatMatrix hstack(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows()) throw InternalError("hstack row mismatch");
    RatMatrix m(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) m.at(r, c) = a.at(r, c);
        for (std::size_t c = 0; c < b.cols(); ++c) m.at(r, a.cols() + c) = b.at(r, c);
    }
    return m;
}

RatMatrix vstack(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.cols()) throw InternalError("vstack column mismatch");
    RatMatrix m(a.rows() + b.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m.at(r, c) = a.at(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) m.at(a.rows() + r, c) = b.at(r, c);
    return m;
}

RatMatrix diag_block(const std::vector<RatMatrix>& blocks) {
    std::size_t rows = 0, cols = 0;
    for (const auto& b : blocks) rows += b.rows(), cols += b.cols();
    RatMatrix m(rows, cols);
    std::size_t ro = 0, co = 0;
    for (const auto& b : blocks) {
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) m.at(ro + r, co + c) = b.at(r, c);
        ro += b.rows();
        co += b.cols();
    }
    return m;
}

}  // namespace tautilt
