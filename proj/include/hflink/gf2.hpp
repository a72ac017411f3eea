#pragma once

// Dense linear algebra over F2, word-packed rows.  The matrices that show up
// here are small (one row/column per generator of a bidegree slice), so plain
// Gaussian elimination is all we need.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hflink::gf2 {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * words_ + c / 64] >> (c % 64)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        uint64_t& w = data_[r * words_ + c / 64];
        uint64_t bit = uint64_t(1) << (c % 64);
        if (v)
            w |= bit;
        else
            w &= ~bit;
    }
    void flip(std::size_t r, std::size_t c) {
        data_[r * words_ + c / 64] ^= uint64_t(1) << (c % 64);
    }

    void xor_row(std::size_t dst, std::size_t src) {
        for (std::size_t k = 0; k < words_; ++k) data_[dst * words_ + k] ^= data_[src * words_ + k];
    }
    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < words_; ++k)
            std::swap(data_[i * words_ + k], data_[j * words_ + k]);
    }
    bool row_empty(std::size_t r) const {
        for (std::size_t k = 0; k < words_; ++k)
            if (data_[r * words_ + k]) return false;
        return true;
    }

    std::vector<bool> row(std::size_t r) const {
        std::vector<bool> out(cols_);
        for (std::size_t c = 0; c < cols_; ++c) out[c] = get(r, c);
        return out;
    }
    std::vector<bool> col(std::size_t c) const {
        std::vector<bool> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = get(r, c);
        return out;
    }
    void set_col(std::size_t c, const std::vector<bool>& v) {
        for (std::size_t r = 0; r < rows_; ++r) set(r, c, v[r]);
    }

    // y = A * x
    std::vector<bool> apply(const std::vector<bool>& x) const {
        if (x.size() != cols_) throw std::invalid_argument("gf2 apply: size mismatch");
        std::vector<bool> y(rows_, false);
        for (std::size_t r = 0; r < rows_; ++r) {
            bool acc = false;
            for (std::size_t c = 0; c < cols_; ++c)
                if (get(r, c) && x[c]) acc = !acc;
            y[r] = acc;
        }
        return y;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols() != b.rows()) throw std::invalid_argument("gf2 mul: size mismatch");
        Matrix c(a.rows(), b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t k = 0; k < a.cols(); ++k)
                if (a.get(i, k))
                    for (std::size_t j = 0; j < b.cols(); ++j)
                        if (b.get(k, j)) c.flip(i, j);
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (a.rows() != b.rows() || a.cols() != b.cols())
            throw std::invalid_argument("gf2 add: size mismatch");
        Matrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] ^= b.data_[i];
        return c;
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<uint64_t> data_;
};

// Column-style elimination helper: maintains a list of reduced columns with
// pivot bookkeeping, supporting rank queries and membership/solve.
class ColumnSpace {
public:
    explicit ColumnSpace(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return basis_.size(); }

    // Reduces v against the stored basis; returns the residual.
    std::vector<bool> reduce(std::vector<bool> v) const {
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (v[pivots_[i]]) xor_into(v, basis_[i]);
        return v;
    }

    // Adds v to the space; returns true if the rank grew.
    bool add(std::vector<bool> v) {
        v = reduce(std::move(v));
        std::size_t p = first_set(v);
        if (p == npos) return false;
        // Keep stored basis reduced against the new vector.
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i][p]) xor_into(basis_[i], v);
        basis_.push_back(std::move(v));
        pivots_.push_back(p);
        return true;
    }

    bool contains(std::vector<bool> v) const { return first_set(reduce(std::move(v))) == npos; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    static void xor_into(std::vector<bool>& a, const std::vector<bool>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] != b[i];
    }
    static std::size_t first_set(const std::vector<bool>& v) {
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i]) return i;
        return npos;
    }

    std::size_t dim_;
    std::vector<std::vector<bool>> basis_;
    std::vector<std::size_t> pivots_;
};

inline std::size_t rank(Matrix m) {
    std::size_t rank = 0;
    std::size_t rows = m.rows(), cols = m.cols();
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && !m.get(pivot, c)) ++pivot;
        if (pivot == rows) continue;
        m.swap_rows(rank, pivot);
        for (std::size_t r = 0; r < rows; ++r)
            if (r != rank && m.get(r, c)) m.xor_row(r, rank);
        ++rank;
    }
    return rank;
}

// Basis of the right nullspace of A (as column vectors).
inline std::vector<std::vector<bool>> nullspace(const Matrix& a) {
    std::size_t rows = a.rows(), cols = a.cols();
    Matrix m = a;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && !m.get(p, c)) ++p;
        if (p == rows) continue;
        m.swap_rows(r, p);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && m.get(i, c)) m.xor_row(i, r);
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<bool>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<bool> x(cols, false);
        x[free] = true;
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            if (m.get(i, free)) x[pivot_col[i]] = true;
        basis.push_back(std::move(x));
    }
    return basis;
}

// Solves A x = b; returns nullopt if inconsistent.
inline std::optional<std::vector<bool>> solve(const Matrix& a, const std::vector<bool>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("gf2 solve: size mismatch");
    std::size_t rows = a.rows(), cols = a.cols();
    Matrix m(rows, cols + 1);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, a.get(r, c));
        m.set(r, cols, b[r]);
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && !m.get(p, c)) ++p;
        if (p == rows) continue;
        m.swap_rows(r, p);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && m.get(i, c)) m.xor_row(i, r);
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (m.get(i, cols)) return std::nullopt;
    std::vector<bool> x(cols, false);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = m.get(i, cols);
    return x;
}

} // namespace hflink::gf2
