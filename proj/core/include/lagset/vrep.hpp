/**
 * Point-cloud (V-only) geometry for sets that are not full-dimensional:
 * the initial singleton {x0}, its first few images, and any set flattened
 * by a measurement slab that exactly supports it. Everything here works on
 * hulls of point columns; the incidence pipeline takes over through
 * polytope_from_points once the hull reaches full dimension.
 */
#pragma once

#include <utility>
#include <vector>

#include "lagset/linalg.hpp"
#include "lagset/lp.hpp"
#include "lagset/polytope.hpp"
#include "lagset/scalar.hpp"

namespace lagset {

template <class S>
Mat<S> dedupe_columns(const Mat<S>& P) {
    std::vector<int> keep;
    for (int j = 0; j < P.cols(); ++j) {
        bool dup = false;
        for (int l : keep)
            if (vec_eq<S>(P.col(j), P.col(l))) {
                dup = true;
                break;
            }
        if (!dup) keep.push_back(j);
    }
    Mat<S> out(P.rows(), keep.size());
    for (int k = 0; k < static_cast<int>(keep.size()); ++k) out.col(k) = P.col(keep[k]);
    return out;
}

/// Is x in the convex hull of the columns of P?
template <class S>
bool hull_contains(const Mat<S>& P, const Vec<S>& x) {
    if (P.cols() == 0) return false;
    Mat<S> E(P.rows() + 1, P.cols());
    E.topRows(P.rows()) = P;
    E.row(P.rows()).setConstant(S(1));
    Vec<S> rhs(P.rows() + 1);
    rhs.head(P.rows()) = x;
    rhs(P.rows()) = S(1);
    return cone_combination_exists<S>(E, rhs);
}

/// Drops every column lying in the hull of the remaining ones, leaving
/// exactly the extreme points.
template <class S>
Mat<S> prune_to_extreme(Mat<S> P) {
    P = dedupe_columns<S>(P);
    std::vector<int> keep(P.cols());
    std::iota(keep.begin(), keep.end(), 0);
    for (int pos = 0; pos < static_cast<int>(keep.size());) {
        Mat<S> others(P.rows(), keep.size() - 1);
        int c = 0;
        for (int l = 0; l < static_cast<int>(keep.size()); ++l)
            if (l != pos) others.col(c++) = P.col(keep[l]);
        if (hull_contains<S>(others, Vec<S>(P.col(keep[pos]))))
            keep.erase(keep.begin() + pos);
        else
            ++pos;
    }
    Mat<S> out(P.rows(), keep.size());
    for (int k = 0; k < static_cast<int>(keep.size()); ++k) out.col(k) = P.col(keep[k]);
    return out;
}

/// hull(P) intersected with {<a,x> <= b}, returned as a new point cloud:
/// the surviving points plus every crossing of a segment from a strictly
/// inside point to a strictly outside one.
template <class S>
Mat<S> clip_points(const Mat<S>& P, const Vec<S>& a, const S& b) {
    std::vector<int> in, on, out;
    std::vector<S> vals(P.cols());
    for (int j = 0; j < P.cols(); ++j) {
        vals[j] = a.dot(P.col(j));
        int c = cmp(vals[j], b);
        if (c < 0)
            in.push_back(j);
        else if (c == 0)
            on.push_back(j);
        else
            out.push_back(j);
    }
    std::vector<Vec<S>> result;
    for (int j : in) result.push_back(P.col(j));
    for (int j : on) result.push_back(P.col(j));
    for (int i : in)
        for (int o : out) {
            S t = (b - vals[i]) / (vals[o] - vals[i]);  // in (0,1)
            result.push_back(P.col(i) + t * (P.col(o) - P.col(i)));
        }
    Mat<S> R(P.rows(), result.size());
    for (int k = 0; k < static_cast<int>(result.size()); ++k) R.col(k) = result[k];
    return prune_to_extreme<S>(std::move(R));
}

/// hull(P) + [-1,1]*B, as extreme points.
template <class S>
Mat<S> minkowski_segment(const Mat<S>& P, const Vec<S>& B) {
    Mat<S> R(P.rows(), 2 * P.cols());
    for (int j = 0; j < P.cols(); ++j) {
        R.col(2 * j) = P.col(j) + B;
        R.col(2 * j + 1) = P.col(j) - B;
    }
    return prune_to_extreme<S>(std::move(R));
}

/// Promotes a full-dimensional extreme point cloud to the (V, F, h, I)
/// representation by enumerating supporting hyperplanes through point
/// subsets. Exhaustive, meant for the small sets the bootstrap produces.
template <class S>
Polytope<S> polytope_from_points(const Mat<S>& points) {
    const int m = static_cast<int>(points.rows());
    Mat<S> V = prune_to_extreme<S>(points);
    const int nv = static_cast<int>(V.cols());
    if (affine_rank<S>(V) != m) throw LowerDimensional();

    std::vector<Vec<S>> dirs;
    std::vector<S> offs;
    std::vector<BitRow> rows;

    std::vector<int> idx(m);
    auto consider = [&]() {
        Mat<S> diffs(m - 1, m);
        for (int k = 1; k < m; ++k) diffs.row(k - 1) = (V.col(idx[k]) - V.col(idx[0])).transpose();
        Mat<S> kernel = nullspace<S>(std::move(diffs));
        if (kernel.cols() != 1) return;  // subset does not span a hyperplane
        Vec<S> n = kernel.col(0);
        S off = n.dot(V.col(idx[0]));
        // orient outward; reject if points fall on both sides
        int side = 0;
        for (int j = 0; j < nv; ++j) {
            int c = cmp(S(n.dot(V.col(j))), off);
            if (c == 0) continue;
            if (side == 0)
                side = c;
            else if (side != c)
                return;
        }
        if (side == 0) return;  // all points on the hyperplane: not full-dim, unreachable
        if (side > 0) {
            n = -n;
            off = -off;
        }
        S alpha = canonicalize_direction_inplace<S>(n);
        off *= alpha;
        for (int i = 0; i < static_cast<int>(dirs.size()); ++i)
            if (eq(offs[i], off) && vec_eq<S>(dirs[i], n)) return;  // already recorded
        BitRow inc(nv);
        for (int j = 0; j < nv; ++j)
            if (eq(S(n.dot(V.col(j))), off)) inc.set(j);
        dirs.push_back(std::move(n));
        offs.push_back(std::move(off));
        rows.push_back(std::move(inc));
    };

    for (int k = 0; k < m; ++k) idx[k] = k;
    for (;;) {
        consider();
        int k = m - 1;
        while (k >= 0 && idx[k] == nv - m + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int l = k + 1; l < m; ++l) idx[l] = idx[l - 1] + 1;
    }

    Polytope<S> P;
    P.V = std::move(V);
    P.F = Mat<S>(dirs.size(), m);
    P.h = Vec<S>(dirs.size());
    for (int i = 0; i < static_cast<int>(dirs.size()); ++i) {
        P.F.row(i) = dirs[i].transpose();
        P.h(i) = offs[i];
    }
    P.I = std::move(rows);
    return P;
}

}  // namespace lagset
