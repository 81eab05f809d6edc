#pragma once

// Dense exact matrices and the row-reduction toolkit everything else sits on.
// Linear maps act on column vectors: a map V -> W is a (dim W) x (dim V)
// matrix and composition is matrix product. Zero-dimensional matrices are
// legal everywhere.

#include "extdim/field.hpp"

#include <cassert>
#include <optional>
#include <vector>

namespace extdim {

template <Field F>
class Mat {
  public:
    Mat() : r_(0), c_(0) {}
    Mat(int r, int c) : r_(r), c_(c), a_(size_t(r) * c, F(0)) {
        assert(r >= 0 && c >= 0);
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    bool empty() const { return r_ == 0 || c_ == 0; }

    F& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
    const F& operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }

    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    Mat operator*(const Mat& o) const {
        assert(c_ == o.r_);
        Mat m(r_, o.c_);
        for (int i = 0; i < r_; ++i)
            for (int k = 0; k < c_; ++k) {
                const F& x = (*this)(i, k);
                if (x.is_zero()) continue;
                for (int j = 0; j < o.c_; ++j) {
                    const F& y = o(k, j);
                    if (!y.is_zero()) m(i, j) += x * y;
                }
            }
        return m;
    }

    Mat operator+(const Mat& o) const {
        assert(r_ == o.r_ && c_ == o.c_);
        Mat m(r_, c_);
        for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
        return m;
    }

    Mat operator-(const Mat& o) const {
        assert(r_ == o.r_ && c_ == o.c_);
        Mat m(r_, c_);
        for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
        return m;
    }

    Mat operator-() const {
        Mat m(r_, c_);
        for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = -a_[i];
        return m;
    }

    Mat scaled(const F& s) const {
        Mat m(r_, c_);
        for (size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * s;
        return m;
    }

    Mat transpose() const {
        Mat m(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    Mat col(int j) const {
        Mat m(r_, 1);
        for (int i = 0; i < r_; ++i) m(i, 0) = (*this)(i, j);
        return m;
    }

    static Mat hstack(const Mat& a, const Mat& b) {
        assert(a.r_ == b.r_);
        Mat m(a.r_, a.c_ + b.c_);
        for (int i = 0; i < a.r_; ++i) {
            for (int j = 0; j < a.c_; ++j) m(i, j) = a(i, j);
            for (int j = 0; j < b.c_; ++j) m(i, a.c_ + j) = b(i, j);
        }
        return m;
    }

    static Mat vstack(const Mat& a, const Mat& b) {
        assert(a.c_ == b.c_);
        Mat m(a.r_ + b.r_, a.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int j = 0; j < a.c_; ++j) m(i, j) = a(i, j);
        for (int i = 0; i < b.r_; ++i)
            for (int j = 0; j < a.c_; ++j) m(a.r_ + i, j) = b(i, j);
        return m;
    }

    // block diagonal
    static Mat diag_sum(const Mat& a, const Mat& b) {
        Mat m(a.r_ + b.r_, a.c_ + b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int j = 0; j < a.c_; ++j) m(i, j) = a(i, j);
        for (int i = 0; i < b.r_; ++i)
            for (int j = 0; j < b.c_; ++j) m(a.r_ + i, a.c_ + j) = b(i, j);
        return m;
    }

    Mat submatrix(int r0, int c0, int nr, int nc) const {
        Mat m(nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
        return m;
    }

  private:
    int r_, c_;
    std::vector<F> a_;
};

// Reduced row echelon form in place; returns pivot column indices.
template <Field F>
std::vector<int> rref(Mat<F>& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int sel = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!m(i, col).is_zero()) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
        F inv = m(row, col).inv();
        for (int j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            F f = m(i, col);
            for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <Field F>
int rank(Mat<F> m) {
    return int(rref(m).size());
}

// Columns form a basis of the null space of a.
template <Field F>
Mat<F> kernel(const Mat<F>& a) {
    Mat<F> m = a;
    std::vector<int> piv = rref(m);
    std::vector<bool> is_piv(a.cols(), false);
    for (int p : piv) is_piv[p] = true;
    std::vector<int> free_cols;
    for (int j = 0; j < a.cols(); ++j)
        if (!is_piv[j]) free_cols.push_back(j);
    Mat<F> k(a.cols(), int(free_cols.size()));
    for (size_t t = 0; t < free_cols.size(); ++t) {
        int fc = free_cols[t];
        k(fc, int(t)) = F(1);
        for (size_t r = 0; r < piv.size(); ++r) k(piv[r], int(t)) = -m(int(r), fc);
    }
    return k;
}

// One solution of a x = b for each column of b, or nullopt if inconsistent.
template <Field F>
std::optional<Mat<F>> solve(const Mat<F>& a, const Mat<F>& b) {
    assert(a.rows() == b.rows());
    Mat<F> m = Mat<F>::hstack(a, b);
    std::vector<int> piv = rref(m);
    for (int p : piv)
        if (p >= a.cols()) return std::nullopt;  // pivot in augmented part
    Mat<F> x(a.cols(), b.cols());
    for (size_t r = 0; r < piv.size(); ++r)
        for (int j = 0; j < b.cols(); ++j) x(piv[r], j) = m(int(r), a.cols() + j);
    return x;
}

// Basis of the column space: the pivot columns of a, verbatim.
template <Field F>
Mat<F> image_basis(const Mat<F>& a) {
    Mat<F> m = a;
    std::vector<int> piv = rref(m);
    Mat<F> b(a.rows(), int(piv.size()));
    for (size_t t = 0; t < piv.size(); ++t)
        for (int i = 0; i < a.rows(); ++i) b(i, int(t)) = a(i, piv[t]);
    return b;
}

// Incremental row-space accumulator: insert vectors, test membership, and
// read off a complement ("coset basis") of the accumulated subspace.
template <Field F>
class Span {
  public:
    explicit Span(int width) : width_(width) {}

    int width() const { return width_; }
    int dim() const { return int(rows_.size()); }

    // Reduces v against the span; returns the residual.
    std::vector<F> reduce(std::vector<F> v) const {
        for (size_t r = 0; r < rows_.size(); ++r) {
            const F& c = v[size_t(pivot_[r])];
            if (c.is_zero()) continue;
            F f = c;
            for (int j = 0; j < width_; ++j) v[size_t(j)] -= f * rows_[r][size_t(j)];
        }
        return v;
    }

    bool contains(const std::vector<F>& v) const {
        auto r = reduce(v);
        for (const auto& x : r)
            if (!x.is_zero()) return false;
        return true;
    }

    // Inserts v; returns true if it enlarged the span.
    bool insert(std::vector<F> v) {
        v = reduce(std::move(v));
        int p = -1;
        for (int j = 0; j < width_; ++j)
            if (!v[size_t(j)].is_zero()) { p = j; break; }
        if (p < 0) return false;
        F inv = v[size_t(p)].inv();
        for (int j = 0; j < width_; ++j) v[size_t(j)] = v[size_t(j)] * inv;
        // back-substitute into existing rows
        for (size_t r = 0; r < rows_.size(); ++r) {
            F c = rows_[r][size_t(p)];
            if (c.is_zero()) continue;
            for (int j = 0; j < width_; ++j) rows_[r][size_t(j)] -= c * v[size_t(j)];
        }
        size_t at = 0;
        while (at < pivot_.size() && pivot_[at] < p) ++at;
        pivot_.insert(pivot_.begin() + at, p);
        rows_.insert(rows_.begin() + at, std::move(v));
        return true;
    }

    // Standard coordinates not hit by any pivot: a basis of the quotient.
    std::vector<int> cobasis() const {
        std::vector<bool> hit(width_, false);
        for (int p : pivot_) hit[size_t(p)] = true;
        std::vector<int> out;
        for (int j = 0; j < width_; ++j)
            if (!hit[size_t(j)]) out.push_back(j);
        return out;
    }

    // Coordinates of [v] in the cobasis of the quotient space.
    std::vector<F> quotient_coords(const std::vector<F>& v, const std::vector<int>& cob) const {
        auto r = reduce(v);
        std::vector<F> out;
        out.reserve(cob.size());
        for (int j : cob) out.push_back(r[size_t(j)]);
        return out;
    }

    const std::vector<std::vector<F>>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivot_; }

  private:
    int width_;
    std::vector<std::vector<F>> rows_;
    std::vector<int> pivot_;
};

}  // namespace extdim
