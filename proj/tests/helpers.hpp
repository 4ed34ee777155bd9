#pragma once

#include <initializer_list>

#include "lagset/estimator.hpp"
#include "lagset/harness.hpp"
#include "lagset/json_io.hpp"
#include "lagset/oracle.hpp"
#include "lagset/recursion.hpp"
#include "lagset/vrep.hpp"

namespace test {

using S = lagset::Rational;
using F = lagset::FloatScalar;
template <class T>
using Vec = lagset::Vec<T>;
template <class T>
using Mat = lagset::Mat<T>;

inline S frac(long n, long d = 1) { return S(n, d); }

template <class T = S>
Vec<T> vec(std::initializer_list<T> xs) {
    Vec<T> v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (const T& x : xs) v(i++) = x;
    return v;
}

template <class T = S>
Mat<T> rows(std::initializer_list<std::initializer_list<T>> rs) {
    const int nr = static_cast<int>(rs.size());
    const int nc = nr ? static_cast<int>(rs.begin()->size()) : 0;
    Mat<T> A(nr, nc);
    int r = 0;
    for (const auto& row : rs) {
        int c = 0;
        for (const T& x : row) A(r, c++) = x;
        ++r;
    }
    return A;
}

template <class T = S>
Mat<T> points(std::initializer_list<std::initializer_list<T>> cs) {
    return rows<T>(cs).transpose();
}

/// n(t) = t, d(t) = 1 - t^2: A = A* = [[0,1],[1,0]], B = (0,1), C = (0,1).
inline lagset::PlantModel<S> square_plant() {
    return lagset::parse_plant<S>({S(0), S(1), S(0)}, {S(1), S(0), S(-1)});
}

inline lagset::Polytope<S> unit_square() {
    return lagset::from_halfspaces<S>(
        rows({{S(1), S(0)}, {S(-1), S(0)}, {S(0), S(1)}, {S(0), S(-1)}}),
        vec({S(1), S(1), S(1), S(1)}));
}

inline lagset::Polytope<S> unit_diamond() {
    return lagset::from_halfspaces<S>(
        rows({{S(1), S(1)}, {S(1), S(-1)}, {S(-1), S(1)}, {S(-1), S(-1)}}),
        vec({S(1), S(1), S(1), S(1)}));
}

template <class T>
bool same_matrix(const Mat<T>& A, const Mat<T>& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) return false;
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            if (!lagset::eq(A(i, j), B(i, j))) return false;
    return true;
}

template <class T>
bool same_polytope(const lagset::Polytope<T>& P, const lagset::Polytope<T>& Q) {
    return lagset::detail::row_sets_equal<T>(P.F, P.h, Q.F, Q.h) &&
           lagset::detail::column_sets_equal<T>(P.V, Q.V);
}

/// Facet row (dir, off) present, up to nothing: inputs must be canonical.
template <class T>
bool has_facet(const lagset::Polytope<T>& P, const Vec<T>& dir, const T& off) {
    for (int i = 0; i < P.n_facets(); ++i)
        if (lagset::eq(P.h(i), off) && lagset::vec_eq<T>(P.F.row(i).transpose(), dir)) return true;
    return false;
}

template <class T>
bool has_vertex(const lagset::Polytope<T>& P, const Vec<T>& v) {
    for (int j = 0; j < P.n_vertices(); ++j)
        if (lagset::vec_eq<T>(P.V.col(j), v)) return true;
    return false;
}

}  // namespace test
