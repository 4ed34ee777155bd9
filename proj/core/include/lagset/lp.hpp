/**
 * Small exact linear programming kernel. The workhorse is a two-phase
 * primal simplex on standard-form problems (min c'y, Ey = rhs, y >= 0) with
 * Bland's anti-cycling rule, which terminates on every input and, on the
 * rational backend, decides feasibility and boundedness exactly.
 *
 * lp_max solves max <obj,x> over {Ax <= b} with free x through its dual
 * (min b'y, A'y = obj, y >= 0), so the tableau has only as many rows as the
 * ambient dimension. A dual-infeasible outcome is split into primal
 * unbounded versus primal infeasible by a Farkas certificate search.
 */
#pragma once

#include <numeric>
#include <vector>

#include "lagset/scalar.hpp"

namespace lagset {

enum class LpStatus { Optimal, Unbounded, Infeasible };

template <class S>
struct LpResult {
    LpStatus status;
    S value;  // meaningful only when status == Optimal
};

namespace detail {

/// min c'y subject to E y = rhs, y >= 0.
template <class S>
LpResult<S> solve_standard(const Vec<S>& c, const Mat<S>& E, const Vec<S>& rhs) {
    const Eigen::Index k = E.rows(), n = E.cols();
    const Eigen::Index total = n + k, rc = total;  // rhs column index

    Mat<S> T(k, total + 1);
    T.leftCols(n) = E;
    T.middleCols(n, k) = Mat<S>::Identity(k, k);
    T.col(rc) = rhs;
    for (Eigen::Index i = 0; i < k; ++i)
        if (lt(T(i, rc), S(0))) T.row(i) = -T.row(i);

    std::vector<Eigen::Index> basis(k);
    std::iota(basis.begin(), basis.end(), n);

    auto pivot = [&](Eigen::Index row, Eigen::Index col, Vec<S>& obj) {
        T.row(row) /= T(row, col);
        for (Eigen::Index i = 0; i < k; ++i) {
            if (i == row || is_zero(T(i, col))) continue;
            S factor = T(i, col);
            T.row(i) -= factor * T.row(row);
            T(i, col) = S(0);
        }
        S ofac = obj(col);
        obj -= ofac * T.row(row).transpose();
        obj(col) = S(0);
        basis[row] = col;
    };

    // Bland: lowest-index entering column with negative reduced cost; leaving
    // row by minimum ratio, ties broken by lowest basic variable index.
    auto run = [&](Vec<S>& obj, Eigen::Index max_col) -> bool {
        for (;;) {
            Eigen::Index enter = -1;
            for (Eigen::Index j = 0; j < max_col; ++j)
                if (lt(obj(j), S(0))) { enter = j; break; }
            if (enter < 0) return true;

            Eigen::Index leave = -1;
            for (Eigen::Index i = 0; i < k; ++i) {
                if (!lt(S(0), T(i, enter))) continue;
                if (leave < 0) { leave = i; continue; }
                int c3 = cmp(T(i, rc) * T(leave, enter), T(leave, rc) * T(i, enter));
                if (c3 < 0 || (c3 == 0 && basis[i] < basis[leave])) leave = i;
            }
            if (leave < 0) return false;  // unbounded
            pivot(leave, enter, obj);
        }
    };

    // phase 1: minimize the artificial variables
    Vec<S> obj1 = Vec<S>::Zero(total + 1);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < k; ++i) obj1(j) -= T(i, j);
    run(obj1, n);  // artificials never re-enter; cannot be unbounded
    S infeas(0);
    for (Eigen::Index i = 0; i < k; ++i)
        if (basis[i] >= n) infeas += T(i, rc);
    if (lt(S(0), infeas)) return {LpStatus::Infeasible, S(0)};

    // drive residual artificials out of the basis (degenerate rows)
    Vec<S> dummy = Vec<S>::Zero(total + 1);
    for (Eigen::Index i = 0; i < k; ++i) {
        if (basis[i] < n) continue;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (is_zero(T(i, j))) continue;
            pivot(i, j, dummy);
            break;
        }
        // an all-zero row is a redundant equality; its artificial stays
        // basic at value zero and never pivots, which is harmless
    }

    // phase 2
    Vec<S> obj2 = Vec<S>::Zero(total + 1);
    obj2.head(n) = c;
    for (Eigen::Index i = 0; i < k; ++i) {
        if (basis[i] >= n || is_zero(obj2(basis[i]))) continue;
        S coeff = obj2(basis[i]);
        obj2 -= coeff * T.row(i).transpose();
        obj2(basis[i]) = S(0);
    }
    if (!run(obj2, n)) return {LpStatus::Unbounded, S(0)};

    S value(0);
    for (Eigen::Index i = 0; i < k; ++i)
        if (basis[i] < n) value += c(basis[i]) * T(i, rc);
    return {LpStatus::Optimal, value};
}

}  // namespace detail

/// max <obj,x> subject to A x <= b, x unrestricted.
template <class S>
LpResult<S> lp_max(const Vec<S>& obj, const Mat<S>& A, const Vec<S>& b) {
    if (A.rows() == 0) {
        if (is_zero_vec<S>(obj)) return {LpStatus::Optimal, S(0)};
        return {LpStatus::Unbounded, S(0)};
    }
    Mat<S> At = A.transpose();
    LpResult<S> dual = detail::solve_standard<S>(b, At, obj);
    if (dual.status == LpStatus::Optimal) return dual;
    if (dual.status == LpStatus::Unbounded) return {LpStatus::Infeasible, S(0)};

    // dual infeasible: primal is unbounded iff no Farkas certificate
    // (y >= 0, A'y = 0, b'y < 0) exists
    LpResult<S> farkas = detail::solve_standard<S>(b, At, Vec<S>::Zero(A.cols()));
    if (farkas.status == LpStatus::Optimal) return {LpStatus::Unbounded, S(0)};
    return {LpStatus::Infeasible, S(0)};
}

/// Is {x : A x <= b} non-empty?
template <class S>
bool h_feasible(const Mat<S>& A, const Vec<S>& b) {
    return lp_max<S>(Vec<S>::Zero(A.cols()), A, b).status == LpStatus::Optimal;
}

/// Does rhs lie in the cone {E y : y >= 0}? With a row of ones appended to E
/// and 1 appended to rhs this decides convex-hull membership.
template <class S>
bool cone_combination_exists(const Mat<S>& E, const Vec<S>& rhs) {
    Vec<S> zero = Vec<S>::Zero(E.cols());
    return detail::solve_standard<S>(zero, E, rhs).status != LpStatus::Infeasible;
}

}  // namespace lagset
