/**
 * Vertex-facet polytope representation.
 *
 * A set is carried redundantly as vertex columns V, outward facet directions
 * F with support offsets h, and the boolean incidence matrix I with
 * I(i,j) = 1 exactly when vertex j lies on facet i. The recursion updates all
 * three together; validate() re-derives every invariant from scratch and is
 * the safety net the tests lean on.
 */
#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "lagset/errors.hpp"
#include "lagset/linalg.hpp"
#include "lagset/lp.hpp"
#include "lagset/scalar.hpp"

namespace lagset {

using BitRow = boost::dynamic_bitset<>;

template <class S>
struct Polytope {
    Mat<S> V;                // m x n_v vertex columns
    Mat<S> F;                // n_f x m facet directions, one per row, outward
    Vec<S> h;                // support offsets: <f_i, x> <= h_i on the set
    std::vector<BitRow> I;   // I[i][j] = 1 iff vertex j lies on facet i

    int dim() const { return static_cast<int>(V.rows()); }
    int n_vertices() const { return static_cast<int>(V.cols()); }
    int n_facets() const { return static_cast<int>(F.rows()); }
};

template <class S>
bool contains_point(const Polytope<S>& P, const Vec<S>& x) {
    for (int i = 0; i < P.n_facets(); ++i)
        if (!le(P.F.row(i).dot(x.transpose()), P.h(i))) return false;
    return true;
}

template <class S>
struct SupportResult {
    S value;
    std::vector<int> argmax;  // vertex columns achieving the maximum
};

template <class S>
SupportResult<S> support(const Polytope<S>& P, const Vec<S>& f) {
    if (P.n_vertices() == 0) throw EmptyPolytope();
    SupportResult<S> r;
    r.value = f.dot(P.V.col(0));
    r.argmax = {0};
    for (int j = 1; j < P.n_vertices(); ++j) {
        S val = f.dot(P.V.col(j));
        int c = cmp(val, r.value);
        if (c > 0) {
            r.value = val;
            r.argmax = {j};
        } else if (c == 0) {
            r.argmax.push_back(j);
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// validation

struct ValidationReport {
    std::vector<std::string> issues;
    bool ok() const { return issues.empty(); }
    std::string describe() const {
        std::ostringstream os;
        for (const auto& s : issues) os << s << '\n';
        return os.str();
    }
};

namespace detail {

template <class S>
Mat<S> gather_columns(const Mat<S>& V, const BitRow& bits) {
    Mat<S> out(V.rows(), bits.count());
    Eigen::Index k = 0;
    for (std::size_t j = bits.find_first(); j != BitRow::npos; j = bits.find_next(j))
        out.col(k++) = V.col(static_cast<Eigen::Index>(j));
    return out;
}

inline std::string at(const char* what, int i, int j) {
    std::ostringstream os;
    os << what << " at (" << i << "," << j << ")";
    return os.str();
}

inline std::string at(const char* what, int i) {
    std::ostringstream os;
    os << what << " at " << i;
    return os.str();
}

}  // namespace detail

template <class S>
ValidationReport validate(const Polytope<S>& P) {
    ValidationReport rep;
    const int m = P.dim(), nv = P.n_vertices(), nf = P.n_facets();

    if (static_cast<int>(P.I.size()) != nf) {
        rep.issues.push_back("incidence row count != facet count");
        return rep;
    }
    for (int i = 0; i < nf; ++i)
        if (static_cast<int>(P.I[i].size()) != nv) {
            rep.issues.push_back(detail::at("incidence row width mismatch", i));
            return rep;
        }
    if (P.h.size() != nf) {
        rep.issues.push_back("offset count != facet count");
        return rep;
    }

    for (int i = 0; i < nf; ++i)
        if (is_zero_vec<S>(P.F.row(i).transpose())) rep.issues.push_back(detail::at("zero facet direction", i));

    // incidence bits must coincide with exact support equality, and every
    // vertex must satisfy every facet inequality
    for (int i = 0; i < nf; ++i) {
        for (int j = 0; j < nv; ++j) {
            S val = P.F.row(i).dot(P.V.col(j).transpose());
            int c = cmp(val, P.h(i));
            if (c > 0) rep.issues.push_back(detail::at("outwardness violated", i, j));
            if ((c == 0) != P.I[i][j]) rep.issues.push_back(detail::at("incidence mismatch", i, j));
        }
    }

    // duplicates
    for (int j = 0; j < nv; ++j)
        for (int l = j + 1; l < nv; ++l)
            if (vec_eq<S>(P.V.col(j), P.V.col(l))) rep.issues.push_back(detail::at("duplicate vertex", j, l));
    for (int i = 0; i < nf; ++i)
        for (int l = i + 1; l < nf; ++l)
            if (vec_eq<S>(P.F.row(i).transpose(), P.F.row(l).transpose()) && eq(P.h(i), P.h(l)))
                rep.issues.push_back(detail::at("duplicate facet", i, l));

    // full dimension and spans
    if (nv > 0 && affine_rank<S>(P.V) != m) rep.issues.push_back("vertex set does not span full dimension");
    for (int i = 0; i < nf; ++i) {
        Mat<S> inc = detail::gather_columns(P.V, P.I[i]);
        if (affine_rank<S>(inc) != m - 1)
            rep.issues.push_back(detail::at("facet incident set does not span dimension m-1", i));
    }
    for (int j = 0; j < nv; ++j) {
        int count = 0;
        for (int i = 0; i < nf; ++i) count += P.I[i][j];
        if (count < m) rep.issues.push_back(detail::at("vertex on fewer than m facets", j));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// canonical form

/// Scales facet directions to canonical form, merges duplicate vertices
/// (incidence OR-ed per column) and duplicate facets (OR-ed per row), then
/// deletes all-zero incidence rows and columns together with their records.
template <class S>
Polytope<S> canonicalize(Polytope<S> P) {
    const int m = P.dim();
    int nv = P.n_vertices(), nf = P.n_facets();

    for (int i = 0; i < nf; ++i) {
        Vec<S> f = P.F.row(i).transpose();
        if (is_zero_vec<S>(f)) continue;  // reported by validate, not our job
        S alpha = canonicalize_direction_inplace<S>(f);
        P.F.row(i) = f.transpose();
        P.h(i) *= alpha;
    }

    // merge duplicate vertex columns
    std::vector<int> col_rep(nv);
    std::vector<int> kept_cols;
    for (int j = 0; j < nv; ++j) {
        col_rep[j] = -1;
        for (int l : kept_cols)
            if (vec_eq<S>(P.V.col(j), P.V.col(l))) {
                col_rep[j] = l;
                break;
            }
        if (col_rep[j] < 0) {
            col_rep[j] = j;
            kept_cols.push_back(j);
        }
    }
    if (static_cast<int>(kept_cols.size()) != nv) {
        std::vector<int> newpos(nv, -1);
        for (int k = 0; k < static_cast<int>(kept_cols.size()); ++k) newpos[kept_cols[k]] = k;
        Mat<S> V2(m, kept_cols.size());
        for (int k = 0; k < static_cast<int>(kept_cols.size()); ++k) V2.col(k) = P.V.col(kept_cols[k]);
        for (int i = 0; i < nf; ++i) {
            BitRow row(kept_cols.size());
            for (int j = 0; j < nv; ++j)
                if (P.I[i][j]) row.set(newpos[col_rep[j]]);
            P.I[i] = std::move(row);
        }
        P.V = std::move(V2);
        nv = static_cast<int>(kept_cols.size());
    }

    // merge duplicate facet rows (same canonical direction and offset)
    std::vector<int> keep_rows;
    for (int i = 0; i < nf; ++i) {
        bool merged = false;
        for (int l : keep_rows)
            if (eq(P.h(i), P.h(l)) && vec_eq<S>(P.F.row(i).transpose(), P.F.row(l).transpose())) {
                P.I[l] |= P.I[i];
                merged = true;
                break;
            }
        if (!merged) keep_rows.push_back(i);
    }

    // drop all-zero rows
    std::vector<int> final_rows;
    for (int i : keep_rows)
        if (P.I[i].any()) final_rows.push_back(i);

    // drop all-zero columns
    BitRow used(nv);
    for (int i : final_rows) used |= P.I[i];
    std::vector<int> final_cols;
    for (int j = 0; j < nv; ++j)
        if (used[j]) final_cols.push_back(j);

    Polytope<S> out;
    out.V = Mat<S>(m, final_cols.size());
    for (int k = 0; k < static_cast<int>(final_cols.size()); ++k) out.V.col(k) = P.V.col(final_cols[k]);
    out.F = Mat<S>(final_rows.size(), m);
    out.h = Vec<S>(final_rows.size());
    out.I.reserve(final_rows.size());
    for (int k = 0; k < static_cast<int>(final_rows.size()); ++k) {
        const int i = final_rows[k];
        out.F.row(k) = P.F.row(i);
        out.h(k) = P.h(i);
        BitRow row(final_cols.size());
        for (int c = 0; c < static_cast<int>(final_cols.size()); ++c)
            if (P.I[i][final_cols[c]]) row.set(c);
        out.I.push_back(std::move(row));
    }
    return out;
}

// ---------------------------------------------------------------------------
// ridges

/// A face of dimension m-2, recorded with the unique facet pair that forms
/// it. Qualifying ridges pair a facet with negative first direction
/// component (i1) against one with positive first component (i2).
template <class S>
struct Ridge {
    int i1, i2;    // facet indices: (f_{i1})_1 < 0 < (f_{i2})_1
    BitRow verts;  // common incident vertices
    Vec<S> f1, f2;
};

template <class S>
std::vector<Ridge<S>> qualifying_ridges(const Polytope<S>& P) {
    const int m = P.dim(), nf = P.n_facets();
    std::vector<Ridge<S>> out;
    for (int a = 0; a < nf; ++a) {
        const int sa = sign(P.F(a, 0));
        if (sa == 0) continue;
        for (int b = a + 1; b < nf; ++b) {
            const int sb = sign(P.F(b, 0));
            if (sb == 0 || sb == sa) continue;
            BitRow common = P.I[a] & P.I[b];
            if (common.none()) continue;
            Mat<S> pts = detail::gather_columns(P.V, common);
            if (affine_rank<S>(pts) != m - 2) continue;
            Ridge<S> r;
            r.i1 = (sa < 0) ? a : b;
            r.i2 = (sa < 0) ? b : a;
            r.verts = std::move(common);
            r.f1 = P.F.row(r.i1).transpose();
            r.f2 = P.F.row(r.i2).transpose();
            out.push_back(std::move(r));
        }
    }
    return out;
}

/// The direction in the convex hull of {f1, f2} whose first component is
/// zero: f_R = t f1 + (1-t) f2 with t = (f2)_1 / ((f2)_1 - (f1)_1).
template <class S>
Vec<S> ridge_direction(const Ridge<S>& r) {
    S t = r.f2(0) / (r.f2(0) - r.f1(0));
    Vec<S> fr = t * r.f1 + (S(1) - t) * r.f2;
    fr(0) = S(0);  // exact by construction of t
    if (is_zero_vec<S>(fr)) throw DegenerateRidge();
    canonicalize_direction_inplace<S>(fr);
    return fr;
}

// ---------------------------------------------------------------------------
// halfspace intersection

namespace detail {

/// All basic feasible points of {A x <= b}: solutions of invertible m-row
/// subsystems that satisfy every row. Finds every vertex of a pointed
/// polyhedron, full-dimensional or not.
template <class S>
Mat<S> enumerate_vertices(const Mat<S>& A, const Vec<S>& b) {
    const int n = static_cast<int>(A.rows()), m = static_cast<int>(A.cols());
    std::vector<Vec<S>> found;
    std::vector<int> idx(m);
    auto feasible = [&](const Vec<S>& x) {
        for (int r = 0; r < n; ++r)
            if (!le(A.row(r).dot(x.transpose()), b(r))) return false;
        return true;
    };
    auto try_subset = [&]() {
        Mat<S> sub(m, m);
        Vec<S> rhs(m);
        for (int k = 0; k < m; ++k) {
            sub.row(k) = A.row(idx[k]);
            rhs(k) = b(idx[k]);
        }
        auto x = solve_square<S>(std::move(sub), std::move(rhs));
        if (!x || !feasible(*x)) return;
        for (const auto& v : found)
            if (vec_eq<S>(v, *x)) return;
        found.push_back(std::move(*x));
    };
    // iterate m-subsets of row indices in lexicographic order
    if (n >= m) {
        for (int k = 0; k < m; ++k) idx[k] = k;
        for (;;) {
            try_subset();
            int k = m - 1;
            while (k >= 0 && idx[k] == n - m + k) --k;
            if (k < 0) break;
            ++idx[k];
            for (int l = k + 1; l < m; ++l) idx[l] = idx[l - 1] + 1;
        }
    }
    Mat<S> out(m, found.size());
    for (int j = 0; j < static_cast<int>(found.size()); ++j) out.col(j) = found[j];
    return out;
}

template <class S>
bool bounded_all_directions(const Mat<S>& A, const Vec<S>& b) {
    const int m = static_cast<int>(A.cols());
    for (int i = 0; i < m; ++i) {
        for (int s : {1, -1}) {
            Vec<S> e = Vec<S>::Zero(m);
            e(i) = S(s);
            if (lp_max<S>(e, A, b).status != LpStatus::Optimal) return false;
        }
    }
    return true;
}

}  // namespace detail

/// Builds the full (V, F, h, I) representation of {x : A x <= b}. Intended
/// for small dimensions and modest row counts; vertex enumeration is
/// exhaustive over row subsets.
template <class S>
Polytope<S> from_halfspaces(const Mat<S>& A, const Vec<S>& b) {
    const int m = static_cast<int>(A.cols());
    if (A.rows() == 0) throw UnboundedSet();
    if (!h_feasible<S>(A, b)) throw EmptySet();
    if (!detail::bounded_all_directions<S>(A, b)) throw UnboundedSet();

    Mat<S> V = detail::enumerate_vertices<S>(A, b);
    if (affine_rank<S>(V) != m) throw LowerDimensional();
    const int nv = static_cast<int>(V.cols());

    Polytope<S> P;
    P.V = std::move(V);
    std::vector<Vec<S>> dirs;
    std::vector<S> offs;
    std::vector<BitRow> rows;
    for (int r = 0; r < static_cast<int>(A.rows()); ++r) {
        Vec<S> a = A.row(r).transpose();
        if (is_zero_vec<S>(a)) continue;
        S alpha = canonicalize_direction_inplace<S>(a);
        S bound = b(r) * alpha;

        S best = a.dot(P.V.col(0));
        for (int j = 1; j < nv; ++j) {
            S val = a.dot(P.V.col(j));
            if (lt(best, val)) best = val;
        }
        if (lt(best, bound)) continue;  // row never tight: redundant

        BitRow inc(nv);
        for (int j = 0; j < nv; ++j)
            if (eq(S(a.dot(P.V.col(j))), bound)) inc.set(j);
        Mat<S> pts = detail::gather_columns(P.V, inc);
        if (affine_rank<S>(pts) != m - 1) continue;  // tight at a lower face only

        bool dup = false;
        for (int i = 0; i < static_cast<int>(dirs.size()); ++i)
            if (eq(offs[i], bound) && vec_eq<S>(dirs[i], a)) {
                rows[i] |= inc;
                dup = true;
                break;
            }
        if (!dup) {
            dirs.push_back(std::move(a));
            offs.push_back(std::move(bound));
            rows.push_back(std::move(inc));
        }
    }
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
