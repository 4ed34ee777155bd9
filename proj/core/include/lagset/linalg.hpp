/**
 * Dense linear algebra for small systems (state dimension <= ~6), written
 * against the scalar comparison policy so pivot decisions are exact on the
 * rational backend and tolerance-aware on the float backend.
 */
#pragma once

#include <optional>
#include <vector>

#include "lagset/scalar.hpp"

namespace lagset {

/// Row-reduces M in place to echelon form. Returns the rank; records the
/// pivot column of each pivot row when pivot_cols is non-null.
template <class S>
int row_echelon(Mat<S>& M, std::vector<int>* pivot_cols = nullptr) {
    const Eigen::Index rows = M.rows(), cols = M.cols();
    int rank = 0;
    for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
        // pick the largest-magnitude candidate pivot; any non-zero works exactly
        Eigen::Index pivot = -1;
        for (Eigen::Index r = rank; r < rows; ++r) {
            if (is_zero(M(r, col))) continue;
            if (pivot < 0 || lt(abs(M(pivot, col)), abs(M(r, col)))) pivot = r;
        }
        if (pivot < 0) continue;
        if (pivot != rank) M.row(pivot).swap(M.row(rank));
        for (Eigen::Index r = rank + 1; r < rows; ++r) {
            if (is_zero(M(r, col))) continue;
            S factor = M(r, col) / M(rank, col);
            M.row(r) -= factor * M.row(rank);
            M(r, col) = S(0);
        }
        if (pivot_cols) pivot_cols->push_back(static_cast<int>(col));
        ++rank;
    }
    return rank;
}

template <class S>
int rank_of(Mat<S> M) {
    return row_echelon(M);
}

/// Affine dimension of a point set given as columns: rank of the
/// differences against the first column. Empty input has dimension -1.
template <class S>
int affine_rank(const Mat<S>& points) {
    if (points.cols() == 0) return -1;
    if (points.cols() == 1) return 0;
    Mat<S> diffs(points.rows(), points.cols() - 1);
    for (Eigen::Index j = 1; j < points.cols(); ++j)
        diffs.col(j - 1) = points.col(j) - points.col(0);
    return rank_of<S>(std::move(diffs));
}

/// Solves A x = b for square A. Returns nullopt when A is singular.
template <class S>
std::optional<Vec<S>> solve_square(Mat<S> A, Vec<S> b) {
    const Eigen::Index n = A.rows();
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = col; r < n; ++r) {
            if (is_zero(A(r, col))) continue;
            if (pivot < 0 || lt(abs(A(pivot, col)), abs(A(r, col)))) pivot = r;
        }
        if (pivot < 0) return std::nullopt;
        if (pivot != col) {
            A.row(pivot).swap(A.row(col));
            std::swap(b(pivot), b(col));
        }
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == col || is_zero(A(r, col))) continue;
            S factor = A(r, col) / A(col, col);
            A.row(r) -= factor * A.row(col);
            A(r, col) = S(0);
            b(r) -= factor * b(col);
        }
    }
    Vec<S> x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = b(i) / A(i, i);
    return x;
}

template <class S>
std::optional<Mat<S>> inverse(const Mat<S>& A) {
    const Eigen::Index n = A.rows();
    Mat<S> aug(n, 2 * n);
    aug.leftCols(n) = A;
    aug.rightCols(n) = Mat<S>::Identity(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = col; r < n; ++r) {
            if (is_zero(aug(r, col))) continue;
            if (pivot < 0 || lt(abs(aug(pivot, col)), abs(aug(r, col)))) pivot = r;
        }
        if (pivot < 0) return std::nullopt;
        if (pivot != col) aug.row(pivot).swap(aug.row(col));
        aug.row(col) /= aug(col, col);
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == col || is_zero(aug(r, col))) continue;
            aug.row(r) -= aug(r, col) * aug.row(col);
        }
    }
    return Mat<S>(aug.rightCols(n));
}

template <class S>
S determinant(Mat<S> A) {
    const Eigen::Index n = A.rows();
    S det(1);
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = -1;
        for (Eigen::Index r = col; r < n; ++r) {
            if (is_zero(A(r, col))) continue;
            if (pivot < 0 || lt(abs(A(pivot, col)), abs(A(r, col)))) pivot = r;
        }
        if (pivot < 0) return S(0);
        if (pivot != col) {
            A.row(pivot).swap(A.row(col));
            det = -det;
        }
        det *= A(col, col);
        for (Eigen::Index r = col + 1; r < n; ++r) {
            if (is_zero(A(r, col))) continue;
            S factor = A(r, col) / A(col, col);
            A.row(r) -= factor * A.row(col);
        }
    }
    return det;
}

/// Columns spanning the kernel of M.
template <class S>
Mat<S> nullspace(Mat<S> M) {
    const Eigen::Index cols = M.cols();
    std::vector<int> pivot_cols;
    int rank = row_echelon(M, &pivot_cols);

    // back-substitute to reduced echelon form
    for (int p = rank - 1; p >= 0; --p) {
        const int pc = pivot_cols[p];
        M.row(p) /= M(p, pc);
        for (int r = 0; r < p; ++r) {
            if (is_zero(M(r, pc))) continue;
            M.row(r) -= M(r, pc) * M.row(p);
        }
    }

    std::vector<bool> is_pivot(cols, false);
    for (int pc : pivot_cols) is_pivot[pc] = true;

    Mat<S> kernel(cols, cols - rank);
    Eigen::Index k = 0;
    for (Eigen::Index free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        Vec<S> v = Vec<S>::Zero(cols);
        v(free_col) = S(1);
        for (int p = 0; p < rank; ++p) v(pivot_cols[p]) = -M(p, free_col);
        kernel.col(k++) = v;
    }
    return kernel;
}

/// Solves D x = rhs for a tall matrix D with full column rank; nullopt when
/// the system is inconsistent.
template <class S>
std::optional<Vec<S>> solve_consistent(const Mat<S>& D, const Vec<S>& rhs) {
    Mat<S> aug(D.rows(), D.cols() + 1);
    aug.leftCols(D.cols()) = D;
    aug.col(D.cols()) = rhs;
    std::vector<int> pivot_cols;
    int rank = row_echelon(aug, &pivot_cols);
    for (int p = 0; p < rank; ++p)
        if (pivot_cols[p] == static_cast<int>(D.cols())) return std::nullopt;  // 0 = nonzero row

    Vec<S> x = Vec<S>::Zero(D.cols());
    for (int p = rank - 1; p >= 0; --p) {
        const int pc = pivot_cols[p];
        S acc = aug(p, D.cols());
        for (Eigen::Index c = pc + 1; c < D.cols(); ++c) acc -= aug(p, c) * x(c);
        x(pc) = acc / aug(p, pc);
    }
    return x;
}

}  // namespace lagset
