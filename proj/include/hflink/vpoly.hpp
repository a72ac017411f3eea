#pragma once

// Univariate polynomials over F2 in the variable v, plus Smith-style
// diagonalization of matrices over F2[v] with transform tracking.  Euclidean
// division with pivoting on minimal-degree entries; ties broken by lowest row,
// then lowest column.

#include <cassert>
#include <string>
#include <vector>

#include "hflink/poly.hpp"

namespace hflink {

class VPoly {
public:
    VPoly() = default;
    static VPoly zero() { return VPoly(); }
    static VPoly one() { return monomial(0); }
    static VPoly monomial(unsigned deg) {
        VPoly p;
        p.c_.assign(deg + 1, 0);
        p.c_[deg] = 1;
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0]; }
    bool is_monomial() const {
        int count = 0;
        for (auto b : c_) count += b;
        return count == 1;
    }
    int deg() const { return (int)c_.size() - 1; }  // -1 for zero
    int low_deg() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i]) return (int)i;
        return -1;
    }
    bool coeff(unsigned d) const { return d < c_.size() && c_[d]; }

    friend VPoly operator+(const VPoly& a, const VPoly& b) {
        VPoly r;
        r.c_.assign(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = (i < a.c_.size() && a.c_[i]) != (i < b.c_.size() && b.c_[i]);
        r.trim();
        return r;
    }
    friend VPoly operator*(const VPoly& a, const VPoly& b) {
        if (a.is_zero() || b.is_zero()) return VPoly();
        VPoly r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (a.c_[i])
                for (std::size_t j = 0; j < b.c_.size(); ++j)
                    if (b.c_[j]) r.c_[i + j] = !r.c_[i + j];
        r.trim();
        return r;
    }
    // Quotient and remainder of a / b.
    friend std::pair<VPoly, VPoly> divmod(VPoly a, const VPoly& b) {
        if (b.is_zero()) throw std::invalid_argument("VPoly division by zero");
        VPoly q;
        q.c_.assign(std::max<int>(0, a.deg() - b.deg() + 1), 0);
        while (!a.is_zero() && a.deg() >= b.deg()) {
            int shift = a.deg() - b.deg();
            q.c_[shift] = 1;
            for (std::size_t i = 0; i < b.c_.size(); ++i)
                if (b.c_[i]) a.c_[i + shift] = !a.c_[i + shift];
            a.trim();
        }
        q.trim();
        return {q, a};
    }
    friend bool operator==(const VPoly&, const VPoly&) = default;

    // Conversion from/to the bivariate type (u-free part).
    static VPoly from_poly(const Poly& p) {
        VPoly r;
        for (Monomial m : p.terms()) {
            if (m.a != 0) throw std::invalid_argument("from_poly: u-dependent term");
            if ((int)m.b >= (int)r.c_.size()) r.c_.resize(m.b + 1, 0);
            r.c_[m.b] = !r.c_[m.b];
        }
        r.trim();
        return r;
    }
    Poly to_poly() const {
        Poly p;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i]) p.toggle({0, (unsigned)i});
        return p;
    }

private:
    void trim() {
        while (!c_.empty() && !c_.back()) c_.pop_back();
    }
    std::vector<char> c_;  // c_[i] = coefficient of v^i
};

inline std::string to_string(const VPoly& p) { return to_string(p.to_poly()); }

class VMat {
public:
    VMat() = default;
    VMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    VPoly& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const VPoly& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    static VMat identity(std::size_t n) {
        VMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = VPoly::one();
        return m;
    }

    friend VMat operator*(const VMat& a, const VMat& b) {
        if (a.cols() != b.rows()) throw std::invalid_argument("VMat mul: size mismatch");
        VMat c(a.rows(), b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t k = 0; k < a.cols(); ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.cols(); ++j)
                    if (!b.at(k, j).is_zero())
                        c.at(i, j) = c.at(i, j) + a.at(i, k) * b.at(k, j);
            }
        return c;
    }

    std::vector<VPoly> col(std::size_t j) const {
        std::vector<VPoly> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = at(i, j);
        return out;
    }
    void set_col(std::size_t j, const std::vector<VPoly>& v) {
        for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
    }
    bool col_zero(std::size_t j) const {
        for (std::size_t i = 0; i < rows_; ++i)
            if (!at(i, j).is_zero()) return false;
        return true;
    }
    static VMat from_columns(std::size_t rows, const std::vector<std::vector<VPoly>>& cols) {
        VMat m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
        return m;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<VPoly> e_;
};

// D = R * A * C with R, C unimodular; diagonal entries of D divide each other
// in order.  Rinv and Cinv satisfy A = Rinv * D * Cinv.
struct SmithForm {
    VMat d, r, rinv, c, cinv;
    std::size_t rank = 0;
};

inline SmithForm smith(const VMat& a) {
    SmithForm s{a, VMat::identity(a.rows()), VMat::identity(a.rows()),
                VMat::identity(a.cols()), VMat::identity(a.cols())};
    VMat& d = s.d;
    auto row_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < d.cols(); ++k) std::swap(d.at(i, k), d.at(j, k));
        for (std::size_t k = 0; k < s.r.cols(); ++k) std::swap(s.r.at(i, k), s.r.at(j, k));
        for (std::size_t k = 0; k < s.rinv.rows(); ++k) std::swap(s.rinv.at(k, i), s.rinv.at(k, j));
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < d.rows(); ++k) std::swap(d.at(k, i), d.at(k, j));
        for (std::size_t k = 0; k < s.c.rows(); ++k) std::swap(s.c.at(k, i), s.c.at(k, j));
        for (std::size_t k = 0; k < s.cinv.cols(); ++k) std::swap(s.cinv.at(i, k), s.cinv.at(j, k));
    };
    // row_i += q * row_j  (and the inverse op on rinv)
    auto row_add = [&](std::size_t i, std::size_t j, const VPoly& q) {
        if (q.is_zero()) return;
        for (std::size_t k = 0; k < d.cols(); ++k) d.at(i, k) = d.at(i, k) + q * d.at(j, k);
        for (std::size_t k = 0; k < s.r.cols(); ++k) s.r.at(i, k) = s.r.at(i, k) + q * s.r.at(j, k);
        for (std::size_t k = 0; k < s.rinv.rows(); ++k)
            s.rinv.at(k, j) = s.rinv.at(k, j) + q * s.rinv.at(k, i);
    };
    auto col_add = [&](std::size_t i, std::size_t j, const VPoly& q) {
        if (q.is_zero()) return;
        for (std::size_t k = 0; k < d.rows(); ++k) d.at(k, i) = d.at(k, i) + q * d.at(k, j);
        for (std::size_t k = 0; k < s.c.rows(); ++k) s.c.at(k, i) = s.c.at(k, i) + q * s.c.at(k, j);
        for (std::size_t k = 0; k < s.cinv.cols(); ++k)
            s.cinv.at(j, k) = s.cinv.at(j, k) + q * s.cinv.at(i, k);
    };

    std::size_t t = 0;
    std::size_t nmin = std::min(d.rows(), d.cols());
    while (t < nmin) {
        // Min-degree pivot; ties by lowest row then lowest column.
        std::size_t pr = 0, pc = 0;
        int best = -1;
        for (std::size_t i = t; i < d.rows(); ++i)
            for (std::size_t j = t; j < d.cols(); ++j) {
                const VPoly& e = d.at(i, j);
                if (e.is_zero()) continue;
                if (best < 0 || e.deg() < best) {
                    best = e.deg();
                    pr = i;
                    pc = j;
                }
            }
        if (best < 0) break;
        row_swap(t, pr);
        col_swap(t, pc);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < d.rows(); ++i) {
                if (d.at(i, t).is_zero()) continue;
                auto [q, rem] = divmod(d.at(i, t), d.at(t, t));
                row_add(i, t, q);
                if (!rem.is_zero()) {
                    row_swap(t, i);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < d.cols(); ++j) {
                if (d.at(t, j).is_zero()) continue;
                auto [q, rem] = divmod(d.at(t, j), d.at(t, t));
                col_add(j, t, q);
                if (!rem.is_zero()) {
                    col_swap(t, j);
                    clean = false;
                }
            }
        }
        ++t;
    }
    // Enforce the divisibility chain d_i | d_{i+1}.
    for (bool stable = false; !stable;) {
        stable = true;
    for (std::size_t i = 0; i + 1 < t; ++i) {
        for (std::size_t j = i + 1; j < t; ++j) {
            if (d.at(i, i).is_zero() || d.at(j, j).is_zero()) continue;
            auto [q, rem] = divmod(d.at(j, j), d.at(i, i));
            if (rem.is_zero()) continue;
            stable = false;
            // Fold entry j into row i and re-reduce the 2x2 block.
            row_add(i, j, VPoly::one());
            // Re-run the elimination restricted to the two rows/cols.
            bool clean = false;
            while (!clean) {
                clean = true;
                if (!d.at(i, j).is_zero()) {
                    auto [q2, r2] = divmod(d.at(i, j), d.at(i, i));
                    col_add(j, i, q2);
                    if (!r2.is_zero()) {
                        col_swap(i, j);
                        clean = false;
                        continue;
                    }
                }
                if (!d.at(j, i).is_zero()) {
                    auto [q2, r2] = divmod(d.at(j, i), d.at(i, i));
                    row_add(j, i, q2);
                    if (!r2.is_zero()) {
                        row_swap(i, j);
                        clean = false;
                    }
                }
            }
        }
    }
    }
    s.rank = 0;
    for (std::size_t i = 0; i < nmin; ++i)
        if (!d.at(i, i).is_zero()) ++s.rank;
    return s;
}

// Basis of the kernel of A as columns (a free module; kernels over a PID are
// saturated, so the basis columns generate exactly).
inline std::vector<std::vector<VPoly>> vkernel(const VMat& a) {
    SmithForm s = smith(a);
    std::vector<std::vector<VPoly>> out;
    std::size_t nmin = std::min(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        bool in_kernel = j >= nmin || s.d.at(j, j).is_zero();
        if (in_kernel) out.push_back(s.c.col(j));
    }
    return out;
}

// Solves A X = Y column by column; throws if some column is not in the image.
inline VMat vsolve(const VMat& a, const VMat& y) {
    if (y.rows() != a.rows()) throw std::invalid_argument("vsolve: size mismatch");
    SmithForm s = smith(a);
    std::size_t nmin = std::min(a.rows(), a.cols());
    VMat x(a.cols(), y.cols());
    VMat z = s.r * y;
    for (std::size_t col = 0; col < y.cols(); ++col) {
        std::vector<VPoly> w(a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const VPoly& zi = z.at(i, col);
            if (i < nmin && !s.d.at(i, i).is_zero()) {
                auto [q, rem] = divmod(zi, s.d.at(i, i));
                if (!rem.is_zero()) throw std::invalid_argument("vsolve: no solution");
                w[i] = q;
            } else if (!zi.is_zero()) {
                throw std::invalid_argument("vsolve: no solution");
            }
        }
        for (std::size_t i = 0; i < a.cols(); ++i) {
            VPoly acc;
            for (std::size_t k = 0; k < a.cols(); ++k)
                if (!w[k].is_zero() && !s.c.at(i, k).is_zero())
                    acc = acc + s.c.at(i, k) * w[k];
            x.at(i, col) = acc;
        }
    }
    return x;
}

} // namespace hflink
