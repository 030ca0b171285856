#pragma once

#include <optional>
#include <vector>

#include "stargale/rational.hpp"

namespace stargale {

/// Dense row-major matrix over the exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static RationalMatrix from_rows(const std::vector<RationalVector>& rows) {
        std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
        RationalMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw InputError("from_rows: ragged rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static RationalMatrix from_columns(const std::vector<RationalVector>& cols) {
        std::size_t c = cols.size(), r = c ? cols[0].size() : 0;
        RationalMatrix m(r, c);
        for (std::size_t j = 0; j < c; ++j) {
            if (cols[j].size() != r) throw InputError("from_columns: ragged columns");
            for (std::size_t i = 0; i < r; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalVector row(std::size_t i) const {
        RationalVector out(cols_);
        for (std::size_t j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
        return out;
    }

    RationalVector column(std::size_t j) const {
        RationalVector out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }

    RationalMatrix transposed() const {
        RationalMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    RationalMatrix select_columns(const std::vector<std::size_t>& idx) const {
        RationalMatrix out(rows_, idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j) {
            if (idx[j] >= cols_) throw InputError("select_columns: index out of range");
            for (std::size_t i = 0; i < rows_; ++i) out(i, j) = (*this)(i, idx[j]);
        }
        return out;
    }

    bool operator==(const RationalMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

/// Determinant by fraction-free Bareiss elimination. Each row is scaled to
/// integers first so all intermediate divisions stay exact over cpp_int.
inline Rational det(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw InputError("det: matrix is not square");
    std::size_t n = m.rows();
    if (n == 0) return 1;  // empty product convention, needed by rank-0 callers

    std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
    Rational scale_back = 1;  // det(M) = det(A) / prod(row scales)
    for (std::size_t i = 0; i < n; ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < n; ++j) l = lcm_of(l, den(m(i, j)));
        scale_back /= l;
        for (std::size_t j = 0; j < n; ++j) {
            Rational v = m(i, j) * l;
            a[i][j] = num(v);  // exact: den(v) == 1 by construction
        }
    }

    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return Rational(sign * a[n - 1][n - 1]) * scale_back;
}

struct RrefResult {
    RationalMatrix reduced;
    std::vector<std::size_t> pivot_columns;
    std::size_t rank = 0;
};

/// Reduced row echelon form by Gauss-Jordan elimination with leading-entry
/// pivoting (first nonzero in column order), so the result is canonical.
inline RrefResult rref(RationalMatrix m) {
    std::size_t rows = m.rows(), cols = m.cols();
    RrefResult res;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c) == 0) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(p, j));
        Rational inv = Rational(1) / m(r, c);
        for (std::size_t j = 0; j < cols; ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rational f = m(i, c);
            for (std::size_t j = 0; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        res.pivot_columns.push_back(c);
        ++r;
    }
    res.reduced = std::move(m);
    res.rank = r;
    return res;
}

inline std::size_t rank(const RationalMatrix& m) { return rref(m).rank; }

/// Canonical basis of the right kernel {v : Mv = 0}, one row per free
/// column of the RREF: the free variable is set to 1, pivot variables take
/// the negated reduced coefficients. Returns a (cols - rank) x cols matrix.
inline RationalMatrix kernel_basis(const RationalMatrix& m) {
    RrefResult rr = rref(m);
    std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : rr.pivot_columns) is_pivot[c] = true;

    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    RationalMatrix basis(free_cols.size(), cols);
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t f = free_cols[k];
        basis(k, f) = 1;
        for (std::size_t i = 0; i < rr.pivot_columns.size(); ++i)
            basis(k, rr.pivot_columns[i]) = -rr.reduced(i, f);
    }
    return basis;
}

/// Solves Ax = b for square nonsingular A; nullopt when A is singular.
inline std::optional<RationalVector> solve_square(const RationalMatrix& a, const RationalVector& b) {
    if (a.rows() != a.cols()) throw InputError("solve_square: matrix is not square");
    if (b.size() != a.rows()) throw InputError("solve_square: size mismatch");
    std::size_t n = a.rows();
    RationalMatrix aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    RrefResult rr = rref(std::move(aug));
    if (rr.rank != n || (rr.rank > 0 && rr.pivot_columns.back() == n)) return std::nullopt;
    RationalVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rr.reduced(i, n);
    return x;
}

/// Matrix-vector product.
inline RationalVector mul(const RationalMatrix& m, const RationalVector& v) {
    if (v.size() != m.cols()) throw InputError("mul: size mismatch");
    RationalVector out(m.rows(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
    return out;
}

}  // namespace stargale
