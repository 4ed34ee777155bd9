/**
 * Independent brute-force reference pipeline. Sets live purely as
 * inequality systems; one measurement step lifts the system with the input
 * variable, substitutes the inverse dynamics, projects the input out by
 * Fourier-Motzkin elimination, and strips redundant rows with exact LPs.
 * Deliberately simple and measurably slower than the incidence pipeline;
 * its only job is to be right.
 */
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lagset/errors.hpp"
#include "lagset/lp.hpp"
#include "lagset/mode.hpp"
#include "lagset/plant.hpp"
#include "lagset/polytope.hpp"
#include "lagset/scalar.hpp"

namespace lagset {

template <class S>
struct HRep {
    Mat<S> A;  // n x dim
    Vec<S> b;
    int dim = 0;
    bool empty = false;  // set when a row 0 <= b with b < 0 was derived

    int n_rows() const { return static_cast<int>(A.rows()); }
};

template <class S>
HRep<S> make_hrep(Mat<S> A, Vec<S> b) {
    HRep<S> H;
    H.dim = static_cast<int>(A.cols());
    H.A = std::move(A);
    H.b = std::move(b);
    return H;
}

template <class S>
HRep<S> empty_hrep(int dim) {
    HRep<S> H;
    H.dim = dim;
    H.A = Mat<S>(0, dim);
    H.b = Vec<S>(0);
    H.empty = true;
    return H;
}

namespace detail {

/// Gcd-normalizes rows, drops trivial rows (0 <= b, b >= 0), drops exact
/// duplicates and same-direction rows with a larger offset. Flags the
/// system empty when a row 0 <= b with b < 0 appears.
template <class S>
HRep<S> tidy_rows(const std::vector<Vec<S>>& as, const std::vector<S>& bs, int dim) {
    std::vector<Vec<S>> dirs;
    std::vector<S> offs;
    for (std::size_t r = 0; r < as.size(); ++r) {
        Vec<S> a = as[r];
        S bound = bs[r];
        if (is_zero_vec<S>(a)) {
            if (lt(bound, S(0))) return empty_hrep<S>(dim);
            continue;
        }
        S alpha = canonicalize_direction_inplace<S>(a);
        bound *= alpha;
        bool merged = false;
        for (std::size_t i = 0; i < dirs.size(); ++i) {
            if (!vec_eq<S>(dirs[i], a)) continue;
            if (lt(bound, offs[i])) offs[i] = bound;  // keep the tighter offset
            merged = true;
            break;
        }
        if (!merged) {
            dirs.push_back(std::move(a));
            offs.push_back(std::move(bound));
        }
    }
    Mat<S> A(dirs.size(), dim);
    Vec<S> b(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        A.row(i) = dirs[i].transpose();
        b(i) = offs[i];
    }
    return make_hrep<S>(std::move(A), std::move(b));
}

}  // namespace detail

inline constexpr std::size_t kFmRowGuard = 50000;

/// Exact Fourier-Motzkin elimination of one variable: every positive
/// coefficient row pairs with every negative one, zero rows pass through.
/// The result lives in dimension dim-1 with the variable's column removed.
template <class S>
HRep<S> fm_eliminate(const HRep<S>& H, int var_index, std::size_t row_guard = kFmRowGuard) {
    const int dim = H.dim;
    if (H.empty) return empty_hrep<S>(dim - 1);
    std::vector<int> pos, neg, zero;
    for (int r = 0; r < H.n_rows(); ++r) {
        int s = sign(H.A(r, var_index));
        if (s > 0)
            pos.push_back(r);
        else if (s < 0)
            neg.push_back(r);
        else
            zero.push_back(r);
    }
    const std::size_t expected = zero.size() + pos.size() * neg.size();
    if (expected > row_guard) throw FmRowGuard(expected, row_guard);

    auto drop_var = [&](const Vec<S>& a) {
        Vec<S> out(dim - 1);
        int k = 0;
        for (int c = 0; c < dim; ++c)
            if (c != var_index) out(k++) = a(c);
        return out;
    };

    std::vector<Vec<S>> as;
    std::vector<S> bs;
    as.reserve(expected);
    bs.reserve(expected);
    for (int r : zero) {
        as.push_back(drop_var(H.A.row(r).transpose()));
        bs.push_back(H.b(r));
    }
    for (int p : pos)
        for (int n : neg) {
            // (-c_n) * row_p + c_p * row_n, both multipliers positive
            S cp = H.A(p, var_index), cn = H.A(n, var_index);
            Vec<S> a = (-cn) * H.A.row(p).transpose() + cp * H.A.row(n).transpose();
            a(var_index) = S(0);
            as.push_back(drop_var(a));
            bs.push_back((-cn) * H.b(p) + cp * H.b(n));
        }
    return detail::tidy_rows<S>(as, bs, dim - 1);
}

/// Minimal irredundant form: each row is tested by maximizing its direction
/// over the other rows plus a relaxed copy of itself (offset + 1, keeping
/// the LP bounded); the row is redundant iff the optimum stays within its
/// offset.
template <class S>
HRep<S> remove_redundant(const HRep<S>& H) {
    if (H.empty) return empty_hrep<S>(H.dim);
    std::vector<Vec<S>> as;
    std::vector<S> bs;
    for (int r = 0; r < H.n_rows(); ++r) {
        as.push_back(H.A.row(r).transpose());
        bs.push_back(H.b(r));
    }
    HRep<S> T = detail::tidy_rows<S>(as, bs, H.dim);
    if (T.empty) return T;
    if (!h_feasible<S>(T.A, T.b)) return empty_hrep<S>(H.dim);

    std::vector<int> keep(T.n_rows());
    std::iota(keep.begin(), keep.end(), 0);
    for (int pos = 0; pos < static_cast<int>(keep.size());) {
        const int r = keep[pos];
        Mat<S> A2(keep.size(), T.dim);
        Vec<S> b2(keep.size());
        for (int k = 0; k < static_cast<int>(keep.size()); ++k) {
            A2.row(k) = T.A.row(keep[k]);
            b2(k) = T.b(keep[k]);
        }
        b2(pos) += S(1);  // relaxed self keeps the LP bounded
        LpResult<S> opt = lp_max<S>(Vec<S>(T.A.row(r).transpose()), A2, b2);
        if (opt.status == LpStatus::Optimal && le(opt.value, T.b(r)))
            keep.erase(keep.begin() + pos);
        else
            ++pos;
    }
    Mat<S> A(keep.size(), T.dim);
    Vec<S> b(keep.size());
    for (int k = 0; k < static_cast<int>(keep.size()); ++k) {
        A.row(k) = T.A.row(keep[k]);
        b(k) = T.b(keep[k]);
    }
    return make_hrep<S>(std::move(A), std::move(b));
}

/// Does {Ax <= b} have an interior point? (Assumes feasibility.)
template <class S>
bool hrep_full_dimensional(const HRep<S>& H) {
    if (H.empty) return false;
    const int m = H.dim;
    Mat<S> A2(H.n_rows(), m + 1);
    A2.leftCols(m) = H.A;
    A2.col(m).setConstant(S(1));
    Vec<S> obj = Vec<S>::Zero(m + 1);
    obj(m) = S(1);
    LpResult<S> r = lp_max<S>(obj, A2, H.b);
    if (r.status == LpStatus::Unbounded) return true;
    return r.status == LpStatus::Optimal && lt(S(0), r.value);
}

template <class S>
struct OracleStepResult {
    HRep<S> H;
    bool lower_dimensional = false;
};

/// One measurement step done the slow way: lift with the input u, apply the
/// slab per mode ordering, substitute x = A^{-1}(x+ - B u), eliminate u,
/// remove redundancy.
template <class S>
OracleStepResult<S> oracle_step(const HRep<S>& H, const S& z, const PlantModel<S>& p, StepMode mode,
                                std::size_t row_guard = kFmRowGuard) {
    const int m = H.dim;
    PrimalRealization<S> pr = primal_realization(p);
    Mat<S> Ainv = *inverse<S>(pr.A);
    Vec<S> AinvB = Ainv * pr.B;

    std::vector<Vec<S>> as;
    std::vector<S> bs;
    auto add_state_row = [&](const Vec<S>& a, const S& bound) {
        // <a, x> <= bound becomes <A^-T a, x+> - <a, A^-1 B> u <= bound
        Vec<S> row(m + 1);
        row.head(m) = Ainv.transpose() * a;
        row(m) = -a.dot(AinvB);
        as.push_back(std::move(row));
        bs.push_back(bound);
    };
    for (int r = 0; r < H.n_rows(); ++r) add_state_row(H.A.row(r).transpose(), H.b(r));
    if (mode == StepMode::UpdateThenPropagate) {
        add_state_row(pr.C, z + S(1));
        add_state_row(Vec<S>(-pr.C), S(1) - z);
    }
    for (int s : {1, -1}) {
        Vec<S> row = Vec<S>::Zero(m + 1);
        row(m) = S(s);
        as.push_back(std::move(row));
        bs.push_back(S(1));
    }

    HRep<S> lifted = detail::tidy_rows<S>(as, bs, m + 1);
    HRep<S> projected = fm_eliminate<S>(lifted, m, row_guard);
    if (mode == StepMode::PropagateThenUpdate) {
        std::vector<Vec<S>> as2;
        std::vector<S> bs2;
        for (int r = 0; r < projected.n_rows(); ++r) {
            as2.push_back(projected.A.row(r).transpose());
            bs2.push_back(projected.b(r));
        }
        as2.push_back(pr.C);
        bs2.push_back(z + S(1));
        as2.push_back(Vec<S>(-pr.C));
        bs2.push_back(S(1) - z);
        projected = detail::tidy_rows<S>(as2, bs2, m);
    }

    OracleStepResult<S> result;
    result.H = remove_redundant<S>(projected);
    if (result.H.empty) throw InfeasibleMeasurement();
    result.lower_dimensional = !hrep_full_dimensional<S>(result.H);
    return result;
}

// ---------------------------------------------------------------------------
// set equality

namespace detail {

template <class S>
bool row_sets_equal(const Mat<S>& A1, const Vec<S>& b1, const Mat<S>& A2, const Vec<S>& b2) {
    if (A1.rows() != A2.rows()) return false;
    for (int i = 0; i < A1.rows(); ++i) {
        bool found = false;
        for (int j = 0; j < A2.rows(); ++j)
            if (eq(b1(i), b2(j)) && vec_eq<S>(A1.row(i).transpose(), A2.row(j).transpose())) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;  // equal sizes + no duplicates inside either side
}

template <class S>
bool column_sets_equal(const Mat<S>& V1, const Mat<S>& V2) {
    if (V1.cols() != V2.cols()) return false;
    for (int i = 0; i < V1.cols(); ++i) {
        bool found = false;
        for (int j = 0; j < V2.cols(); ++j)
            if (vec_eq<S>(V1.col(i), V2.col(j))) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

}  // namespace detail

/// Order- and scaling-insensitive equality of solution sets: canonical
/// minimal inequality rows must coincide and so must the vertex sets.
template <class S>
bool set_equal(const Polytope<S>& P, const HRep<S>& H) {
    HRep<S> M = remove_redundant<S>(H);
    if (M.empty) return false;
    if (!detail::row_sets_equal<S>(P.F, P.h, M.A, M.b)) return false;
    Mat<S> W = detail::enumerate_vertices<S>(M.A, M.b);
    return detail::column_sets_equal<S>(P.V, W);
}

template <class S>
bool set_equal(const HRep<S>& Ha, const HRep<S>& Hb) {
    HRep<S> Ma = remove_redundant<S>(Ha);
    HRep<S> Mb = remove_redundant<S>(Hb);
    if (Ma.empty != Mb.empty) return false;
    if (Ma.empty) return true;
    if (!detail::row_sets_equal<S>(Ma.A, Ma.b, Mb.A, Mb.b)) return false;
    Mat<S> Wa = detail::enumerate_vertices<S>(Ma.A, Ma.b);
    Mat<S> Wb = detail::enumerate_vertices<S>(Mb.A, Mb.b);
    return detail::column_sets_equal<S>(Wa, Wb);
}

/// Cheaper variant used by the benchmark loop: canonical minimal rows only.
/// For bounded full-dimensional sets this already decides equality.
template <class S>
bool set_equal_rows(const Polytope<S>& P, const HRep<S>& H) {
    HRep<S> M = remove_redundant<S>(H);
    if (M.empty) return false;
    return detail::row_sets_equal<S>(P.F, P.h, M.A, M.b);
}

}  // namespace lagset
