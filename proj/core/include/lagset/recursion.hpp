/**
 * One full measurement step for a lag plant, maintained directly on the
 * (V, F, h, I) representation.
 *
 * The "update" half intersects the set with the measurement slab
 * |<C,x> - z| <= 1 by clipping edges found from the incidence matrix. The
 * "propagate" half applies x+ = A x + B u over all |u| <= 1 in one
 * combinatorial table: candidate vertices A v +/- B, candidate facet
 * directions A* f (and A* f_R for qualifying ridges), with the new
 * incidence assembled purely from boolean operations on the old one.
 * No LP and no redundancy elimination is involved; that is the entire
 * performance story against the projection oracle.
 */
#pragma once

#include <array>
#include <chrono>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lagset/errors.hpp"
#include "lagset/linalg.hpp"
#include "lagset/mode.hpp"
#include "lagset/plant.hpp"
#include "lagset/polytope.hpp"
#include "lagset/scalar.hpp"

namespace lagset {

// ---------------------------------------------------------------------------
// facet classification

/// Partition of facets by where the dual line of their direction crosses
/// the u*-axis: up-propagating (d_m (f)_1 < 0, crossing positive), down
/// (d_m (f)_1 > 0), or through the origin ((f)_1 = 0).
struct FacetClassification {
    BitRow up, down, zero;
};

template <class S>
FacetClassification classify_facets(const Polytope<S>& P, const PlantModel<S>& p) {
    const int nf = P.n_facets();
    FacetClassification c{BitRow(nf), BitRow(nf), BitRow(nf)};
    for (int i = 0; i < nf; ++i) {
        int s = sign(S(p.dm() * P.F(i, 0)));
        if (s < 0)
            c.up.set(i);
        else if (s > 0)
            c.down.set(i);
        else
            c.zero.set(i);
    }
    return c;
}

// ---------------------------------------------------------------------------
// measurement slab and cut

template <class S>
struct MeasurementSlab {
    Vec<S> C;  // output row of the primal realization; nonzero by coprimality
    S z;       // measurement: the slab is z - 1 <= <C,x> <= z + 1
};

template <class S>
MeasurementSlab<S> measurement_slab(const PlantModel<S>& p, const S& z) {
    return {primal_realization(p).C, z};
}

namespace detail {

/// P intersected with {<a,x> <= b}. Vertices are classified against the
/// hyperplane; each edge from a strictly-inside to a strictly-outside
/// vertex is crossed exactly; facet rows whose surviving incident set no
/// longer spans dimension m-1 are dropped; the hyperplane itself becomes a
/// facet when it cuts properly.
template <class S>
Polytope<S> cut_halfspace(const Polytope<S>& P, Vec<S> a, S b) {
    const int m = P.dim(), nv = P.n_vertices(), nf = P.n_facets();
    S alpha = canonicalize_direction_inplace<S>(a);
    b *= alpha;

    std::vector<int> cls(nv);
    bool any_in = false, any_on = false, any_out = false;
    std::vector<S> vals(nv);
    for (int j = 0; j < nv; ++j) {
        vals[j] = a.dot(P.V.col(j));
        cls[j] = cmp(vals[j], b);
        (cls[j] < 0 ? any_in : cls[j] == 0 ? any_on : any_out) = true;
    }
    if (!any_out) return P;  // hyperplane does not cut: supporting or disjoint from above
    if (!any_in && !any_on) throw InfeasibleMeasurement();
    if (!any_in) throw DegenerateCut();  // intersection is the face <a,x> = b

    // cross every edge between a strictly-inside and a strictly-outside
    // vertex; a vertex pair is an edge iff its common facet normals span a
    // hyperplane
    std::vector<Vec<S>> cuts;
    std::vector<BitRow> cut_facets;  // old facet rows containing each crossing
    for (int i = 0; i < nv; ++i) {
        if (cls[i] >= 0) continue;
        for (int o = 0; o < nv; ++o) {
            if (cls[o] <= 0) continue;
            BitRow common(nf);
            for (int r = 0; r < nf; ++r)
                if (P.I[r][i] && P.I[r][o]) common.set(r);
            if (static_cast<int>(common.count()) < m - 1) continue;
            Mat<S> normals(common.count(), m);
            int k = 0;
            for (std::size_t r = common.find_first(); r != BitRow::npos; r = common.find_next(r))
                normals.row(k++) = P.F.row(static_cast<int>(r));
            if (rank_of<S>(std::move(normals)) != m - 1) continue;

            S t = (b - vals[i]) / (vals[o] - vals[i]);  // in (0,1)
            Vec<S> pt = P.V.col(i) + t * (P.V.col(o) - P.V.col(i));
            bool dup = false;
            for (std::size_t c = 0; c < cuts.size(); ++c)
                if (vec_eq<S>(cuts[c], pt)) {
                    cut_facets[c] |= common;
                    dup = true;
                    break;
                }
            if (!dup) {
                cuts.push_back(std::move(pt));
                cut_facets.push_back(std::move(common));
            }
        }
    }

    // surviving vertex columns: inside/on originals, then the crossings
    std::vector<int> keep;
    for (int j = 0; j < nv; ++j)
        if (cls[j] <= 0) keep.push_back(j);
    const int n_keep = static_cast<int>(keep.size()), n_cut = static_cast<int>(cuts.size());

    Polytope<S> out;
    out.V = Mat<S>(m, n_keep + n_cut);
    for (int k = 0; k < n_keep; ++k) out.V.col(k) = P.V.col(keep[k]);
    for (int c = 0; c < n_cut; ++c) out.V.col(n_keep + c) = cuts[c];

    std::vector<Vec<S>> dirs;
    std::vector<S> offs;
    std::vector<BitRow> rows;
    for (int r = 0; r < nf; ++r) {
        BitRow bits(n_keep + n_cut);
        for (int k = 0; k < n_keep; ++k)
            if (P.I[r][keep[k]]) bits.set(k);
        for (int c = 0; c < n_cut; ++c)
            if (cut_facets[c][r]) bits.set(n_keep + c);
        if (bits.none()) continue;
        Mat<S> pts = gather_columns(out.V, bits);
        if (affine_rank<S>(pts) != m - 1) continue;  // facet shrank below full facet rank
        dirs.push_back(P.F.row(r).transpose());
        offs.push_back(P.h(r));
        rows.push_back(std::move(bits));
    }
    {
        // the cutting hyperplane itself
        BitRow bits(n_keep + n_cut);
        for (int k = 0; k < n_keep; ++k)
            if (cls[keep[k]] == 0) bits.set(k);
        for (int c = 0; c < n_cut; ++c) bits.set(n_keep + c);
        dirs.push_back(a);
        offs.push_back(b);
        rows.push_back(std::move(bits));
    }

    out.F = Mat<S>(dirs.size(), m);
    out.h = Vec<S>(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        out.F.row(i) = dirs[i].transpose();
        out.h(i) = offs[i];
    }
    out.I = std::move(rows);
    return canonicalize<S>(std::move(out));
}

}  // namespace detail

/// S intersected with the measurement slab z-1 <= <C,x> <= z+1, as two
/// sequential halfspace cuts with full incidence maintenance.
template <class S>
Polytope<S> slab_cut(const Polytope<S>& P, const MeasurementSlab<S>& slab) {
    Polytope<S> Q = detail::cut_halfspace<S>(P, slab.C, S(slab.z + S(1)));
    return detail::cut_halfspace<S>(Q, Vec<S>(-slab.C), S(S(1) - slab.z));
}

// ---------------------------------------------------------------------------
// propagation

struct StepReport {
    int n_f_before = 0, n_v_before = 0, n_ridges = 0;
    int n_f_after = 0, n_v_after = 0;
    int pruned_zero_rows = 0, pruned_zero_cols = 0, merged_columns = 0;
    bool updown_counts_preserved = true;
    std::vector<std::array<int, 3>> updown_counts;  // {source facet, incident before, incident after}
    double propagate_seconds = 0.0;
    double cut_seconds = 0.0;
};

/// Intermediate boolean matrices of one propagation, captured on request so
/// the example walk-throughs can print them.
template <class S>
struct TableTrace {
    BitRow up_mask, down_mask, zero_mask;
    BitRow ivpt, ivpb;  // vertices propagating up / down to vertices
    std::vector<BitRow> block_up, block_down;          // per facet, width n_v
    std::vector<BitRow> block_zero_up, block_zero_down;
    std::vector<BitRow> ridge_verts, ridge_up, ridge_down;  // per ridge
    std::vector<std::pair<int, int>> ridge_pairs;
    std::vector<Vec<S>> ridge_dirs;
    Mat<S> gT, gB;
    std::vector<Vec<S>> pre_dirs;    // candidate rows before pruning
    std::vector<BitRow> pre_rows;    // width 2 n_v: shifted-up half then shifted-down half
};

template <class S>
struct LagPropagateOptions {
    bool ridge_rows = true;  // disabled only by fault-injection tests
    TableTrace<S>* trace = nullptr;
};

/// The image {A x + B u : x in S, |u| <= 1}, built combinatorially.
template <class S>
std::pair<Polytope<S>, StepReport> lag_propagate(const Polytope<S>& P, const PlantModel<S>& p,
                                                 const LagPropagateOptions<S>& opt = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    const int m = P.dim(), nv = P.n_vertices(), nf = P.n_facets();
    if (m < 2 || nv == 0 || affine_rank<S>(P.V) != m) throw NotFullDimensional();

    PrimalRealization<S> pr = primal_realization(p);
    DualRealization<S> du = dual_realization(p);
    FacetClassification cls = classify_facets(P, p);

    Mat<S> gT(m, nv), gB(m, nv);
    for (int j = 0; j < nv; ++j) {
        Vec<S> Av = pr.A * P.V.col(j);
        gT.col(j) = Av + pr.B;
        gB.col(j) = Av - pr.B;
    }

    // boolean blocks
    std::vector<BitRow> IT(nf), IB(nf), IOT(nf), IOB(nf);
    BitRow ivpt(nv), ivpb(nv);
    for (int i = 0; i < nf; ++i) {
        IT[i] = cls.up[i] ? P.I[i] : BitRow(nv);
        IB[i] = cls.down[i] ? P.I[i] : BitRow(nv);
        ivpt |= IT[i];
        ivpb |= IB[i];
    }
    for (int i = 0; i < nf; ++i) {
        IOT[i] = cls.zero[i] ? (P.I[i] & ivpt) : BitRow(nv);
        IOB[i] = cls.zero[i] ? (P.I[i] & ivpb) : BitRow(nv);
    }

    std::vector<Ridge<S>> ridges;
    if (opt.ridge_rows) ridges = qualifying_ridges<S>(P);
    const int nr = static_cast<int>(ridges.size());
    std::vector<BitRow> IRV(nr), IRT(nr), IRB(nr);
    std::vector<Vec<S>> ridge_dirs(nr);
    for (int l = 0; l < nr; ++l) {
        IRV[l] = ridges[l].verts;
        IRT[l] = IRV[l] & ivpt;
        IRB[l] = IRV[l] & ivpb;
        ridge_dirs[l] = ridge_direction<S>(ridges[l]);
    }

    // candidate rows over the doubled column set, in table order: the
    // shifted-up group, the shifted-down group, the zero-direction group,
    // then the ridge group
    struct Candidate {
        Vec<S> dir;
        BitRow bits;  // width 2 n_v
        int source;   // facet index, or -(ridge index)-1
        int group;    // 0 up, 1 down, 2 zero, 3 ridge
    };
    std::vector<Candidate> cand;
    cand.reserve(3 * nf + nr);
    auto make_bits = [&](const BitRow& tb, const BitRow& bb) {
        BitRow bits(2 * nv);
        for (std::size_t j = tb.find_first(); j != BitRow::npos; j = tb.find_next(j)) bits.set(j);
        for (std::size_t j = bb.find_first(); j != BitRow::npos; j = bb.find_next(j)) bits.set(nv + j);
        return bits;
    };
    const BitRow none(nv);
    for (int i = 0; i < nf; ++i)
        cand.push_back({du.A * P.F.row(i).transpose(), make_bits(IT[i], none), i, 0});
    for (int i = 0; i < nf; ++i)
        cand.push_back({du.A * P.F.row(i).transpose(), make_bits(none, IB[i]), i, 1});
    for (int i = 0; i < nf; ++i)
        cand.push_back({du.A * P.F.row(i).transpose(), make_bits(IOT[i], IOB[i]), i, 2});
    for (int l = 0; l < nr; ++l)
        cand.push_back({du.A * ridge_dirs[l], make_bits(IRT[l], IRB[l]), -l - 1, 3});

    if (opt.trace) {
        TableTrace<S>& tr = *opt.trace;
        tr.up_mask = cls.up;
        tr.down_mask = cls.down;
        tr.zero_mask = cls.zero;
        tr.ivpt = ivpt;
        tr.ivpb = ivpb;
        tr.block_up = IT;
        tr.block_down = IB;
        tr.block_zero_up = IOT;
        tr.block_zero_down = IOB;
        tr.ridge_verts = IRV;
        tr.ridge_up = IRT;
        tr.ridge_down = IRB;
        tr.ridge_pairs.clear();
        for (const auto& r : ridges) tr.ridge_pairs.emplace_back(r.i1, r.i2);
        tr.ridge_dirs = ridge_dirs;
        tr.gT = gT;
        tr.gB = gB;
        tr.pre_dirs.clear();
        tr.pre_rows.clear();
        for (const auto& c : cand) {
            tr.pre_dirs.push_back(c.dir);
            tr.pre_rows.push_back(c.bits);
        }
    }

    StepReport rep;
    rep.n_f_before = nf;
    rep.n_v_before = nv;
    rep.n_ridges = nr;

    // prune all-zero rows (the wrong-class rows of each group)
    std::vector<Candidate> live;
    for (auto& c : cand) {
        if (c.bits.none()) {
            ++rep.pruned_zero_rows;
            continue;
        }
        live.push_back(std::move(c));
    }

    // prune all-zero columns: exactly the non-propagating half-columns
    std::vector<int> colmap(2 * nv, -1);
    std::vector<int> colsrc;  // doubled-index of each kept column
    for (int j = 0; j < nv; ++j)
        if (ivpt[j]) {
            colmap[j] = static_cast<int>(colsrc.size());
            colsrc.push_back(j);
        }
    for (int j = 0; j < nv; ++j)
        if (ivpb[j]) {
            colmap[nv + j] = static_cast<int>(colsrc.size());
            colsrc.push_back(nv + j);
        }
    rep.pruned_zero_cols = 2 * nv - static_cast<int>(colsrc.size());

    auto column_point = [&](int doubled) -> Vec<S> {
        return doubled < nv ? Vec<S>(gT.col(doubled)) : Vec<S>(gB.col(doubled - nv));
    };

    // merge duplicate columns: A v_a + B = A v_b - B happens iff
    // v_b - v_a = 2 A^{-1} B, so merges only pair opposite halves
    std::vector<int> rep_of(colsrc.size());
    std::vector<int> final_cols;  // indices into colsrc
    for (std::size_t c = 0; c < colsrc.size(); ++c) {
        Vec<S> pt = column_point(colsrc[c]);
        int found = -1;
        for (int f : final_cols)
            if (vec_eq<S>(Vec<S>(column_point(colsrc[f])), pt)) {
                found = f;
                break;
            }
        if (found < 0) {
            rep_of[c] = static_cast<int>(c);
            final_cols.push_back(static_cast<int>(c));
        } else {
            rep_of[c] = found;
            ++rep.merged_columns;
        }
    }
    std::vector<int> final_pos(colsrc.size(), -1);
    for (std::size_t k = 0; k < final_cols.size(); ++k) final_pos[final_cols[k]] = static_cast<int>(k);

    const int out_nv = static_cast<int>(final_cols.size());
    Polytope<S> out;
    out.V = Mat<S>(m, out_nv);
    for (int k = 0; k < out_nv; ++k) out.V.col(k) = column_point(colsrc[final_cols[k]]);

    out.F = Mat<S>(live.size(), m);
    out.h = Vec<S>(live.size());
    out.I.clear();
    out.I.reserve(live.size());
    for (std::size_t r = 0; r < live.size(); ++r) {
        Vec<S> dir = live[r].dir;
        S alpha = canonicalize_direction_inplace<S>(dir);
        (void)alpha;  // offsets are recomputed from scratch below
        BitRow bits(out_nv);
        for (std::size_t j = live[r].bits.find_first(); j != BitRow::npos; j = live[r].bits.find_next(j))
            bits.set(final_pos[rep_of[colmap[static_cast<int>(j)]]]);
        // offset: support value over the incident columns
        S off(0);
        bool first = true;
        for (std::size_t j = bits.find_first(); j != BitRow::npos; j = bits.find_next(j)) {
            S val = dir.dot(out.V.col(static_cast<Eigen::Index>(j)));
            if (first || lt(off, val)) off = val;
            first = false;
        }
        out.F.row(r) = dir.transpose();
        out.h(r) = off;
        out.I.push_back(std::move(bits));
    }

    rep.n_f_after = out.n_facets();
    rep.n_v_after = out.n_vertices();

    // up/down-propagated facets must keep their incident-vertex counts
    for (std::size_t r = 0; r < live.size(); ++r) {
        if (live[r].group > 1) continue;
        const int src = live[r].source;
        const int before = static_cast<int>(P.I[src].count());
        const int after = static_cast<int>(out.I[r].count());
        rep.updown_counts.push_back({src, before, after});
        if (before != after) rep.updown_counts_preserved = false;
    }

    rep.propagate_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(out), std::move(rep)};
}

/// One full measurement step in the requested order.
template <class S>
std::pair<Polytope<S>, StepReport> step(const Polytope<S>& P, const S& z, const PlantModel<S>& p, StepMode mode,
                                        const LagPropagateOptions<S>& opt = {}) {
    MeasurementSlab<S> slab = measurement_slab(p, z);
    if (mode == StepMode::UpdateThenPropagate) {
        const auto c0 = std::chrono::steady_clock::now();
        Polytope<S> cut = slab_cut<S>(P, slab);
        const double cut_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
        auto [next, rep] = lag_propagate<S>(cut, p, opt);
        rep.cut_seconds = cut_s;
        return {std::move(next), std::move(rep)};
    }
    auto [prop, rep] = lag_propagate<S>(P, p, opt);
    const auto c0 = std::chrono::steady_clock::now();
    Polytope<S> next = slab_cut<S>(prop, slab);
    rep.cut_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - c0).count();
    return {std::move(next), std::move(rep)};
}

// ---------------------------------------------------------------------------
// dual line, alignment, and the M-set

template <class S>
struct DualLine {
    S ny, du, rhs;  // the line n_m y* + d_m u* = -(f)_1 in the y*u*-plane
};

template <class S>
DualLine<S> dual_line(const Vec<S>& f, const PlantModel<S>& p) {
    return {p.nm(), p.dm(), S(-f(0))};
}

/// The six alignment implications between a primal pair (y,u) on the
/// measurement square and a dual pair (y*,u*).
template <class S>
bool aligned(const S& y, const S& u, const S& y_star, const S& u_star, const S& z) {
    if (lt(S(0), u_star) && !eq(u, S(1))) return false;
    if (lt(u_star, S(0)) && !eq(u, S(-1))) return false;
    if (lt(abs(u), S(1)) && !is_zero(u_star)) return false;
    if (lt(S(0), y_star) && !eq(y, S(z + S(1)))) return false;
    if (lt(y_star, S(0)) && !eq(y, S(z - S(1)))) return false;
    if (lt(abs(S(y - z)), S(1)) && !is_zero(y_star)) return false;
    return true;
}

/// One rectangle of M(x,f,z): a u-range times a y*-range, where the
/// y*-range may extend to +inf (ray_up) or -inf (ray_down).
template <class S>
struct AlignmentPiece {
    S u_lo, u_hi;
    S y_lo, y_hi;
    bool ray_up = false, ray_down = false;
};

template <class S>
struct AlignmentSet {
    std::vector<AlignmentPiece<S>> pieces;

    bool is_empty() const { return pieces.empty(); }
    bool is_single_point(const S& u, const S& y_star) const {
        if (pieces.size() != 1) return false;
        const auto& p = pieces.front();
        return !p.ray_up && !p.ray_down && eq(p.u_lo, u) && eq(p.u_hi, u) && eq(p.y_lo, y_star) &&
               eq(p.y_hi, y_star);
    }
    bool contains(const S& u, const S& y_star) const {
        for (const auto& p : pieces) {
            if (lt(u, p.u_lo) || lt(p.u_hi, u)) continue;
            bool lo_ok = p.ray_down || le(p.y_lo, y_star);
            bool hi_ok = p.ray_up || le(y_star, p.y_hi);
            if (lo_ok && hi_ok) return true;
        }
        return false;
    }
};

namespace detail {

/// Pieces of M on the half-line y* >= 0 (dir = +1) or y* <= 0 (dir = -1),
/// for a state on the corresponding slab boundary. u is pinned by the sign
/// of u*(y*) = u0 + slope y*, which changes at most once.
template <class S>
void halfline_pieces(AlignmentSet<S>& M, const S& u0, const S& slope, int dir) {
    auto ray = [&](const S& ulo, const S& uhi) {
        AlignmentPiece<S> p{ulo, uhi, S(0), S(0)};
        (dir > 0 ? p.ray_up : p.ray_down) = true;
        M.pieces.push_back(std::move(p));
    };
    auto segment = [&](const S& ulo, const S& uhi, const S& ya, const S& yb) {
        // ya, yb given in traversal order from 0 outward
        AlignmentPiece<S> p{ulo, uhi, ya, yb};
        if (dir < 0) std::swap(p.y_lo, p.y_hi);
        M.pieces.push_back(std::move(p));
    };
    auto u_of = [&](int s) { return S(s); };

    if (is_zero(slope)) {
        int s = sign(u0);
        if (s == 0)
            ray(S(-1), S(1));
        else
            ray(u_of(s), u_of(s));
        return;
    }
    S yc = -u0 / slope;  // u* vanishes here
    const int side = sign(S(yc * S(dir)));  // crossing inside the half-line?
    if (side < 0) {
        int s = sign(u0);  // constant sign throughout (u0 != 0 since yc != 0)
        ray(u_of(s), u_of(s));
        return;
    }
    if (side == 0) {
        // crossing at the origin: u free there, then pinned by the slope side
        segment(S(-1), S(1), S(0), S(0));
        int s = sign(S(slope * S(dir)));
        AlignmentPiece<S> p{u_of(s), u_of(s), S(0), S(0)};
        (dir > 0 ? p.ray_up : p.ray_down) = true;
        M.pieces.push_back(std::move(p));
        return;
    }
    // crossing strictly inside the half-line
    int s0 = sign(u0);
    segment(u_of(s0), u_of(s0), S(0), yc);
    segment(S(-1), S(1), yc, yc);
    int s1 = sign(S(slope * S(dir)));
    AlignmentPiece<S> p{u_of(s1), u_of(s1), yc, yc};
    (dir > 0 ? p.ray_up : p.ray_down) = true;
    M.pieces.push_back(std::move(p));
}

}  // namespace detail

/// M(x, f, z): all (u, y*) for which (y,u) on the measurement square is
/// aligned with a point of the dual line of f. Returned as a finite union
/// of rectangles, possibly unbounded in y*.
template <class S>
AlignmentSet<S> compute_alignment_set(const Vec<S>& x, const Vec<S>& f, const S& z, const PlantModel<S>& p) {
    AlignmentSet<S> M;
    PrimalRealization<S> pr = primal_realization(p);
    S y = pr.C.dot(x);
    S d = y - z;
    if (lt(S(1), abs(d))) return M;  // state does not survive the measurement

    S u0 = -f(0) / p.dm();        // u* at y* = 0
    S slope = -p.nm() / p.dm();   // d u* / d y* along the dual line

    if (lt(abs(d), S(1))) {
        // interior of the slab: y* = 0 forced, u pinned by the sign of u*(0)
        int s = sign(u0);
        AlignmentPiece<S> piece{S(s), S(s), S(0), S(0)};
        if (s == 0) {
            piece.u_lo = S(-1);
            piece.u_hi = S(1);
        }
        M.pieces.push_back(std::move(piece));
        return M;
    }
    detail::halfline_pieces<S>(M, u0, slope, cmp(d, S(0)));
    return M;
}

// ---------------------------------------------------------------------------
// alignment-based step verification

struct VerificationReport {
    int pairs = 0;
    int points = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Independent check of one update-then-propagate step: for vertex/facet
/// pairs of the source set and each extreme point (u,y*) of M, the
/// propagated point A v + B u must lie in the successor set and the
/// propagated direction A* f + B* y* must support the successor there.
/// Rays of M are checked through their recession direction B*.
template <class S>
VerificationReport verify_alignment(const Polytope<S>& Sk, const Polytope<S>& Snext, const S& z,
                                    const PlantModel<S>& p, int max_pairs = 1 << 20) {
    VerificationReport rep;
    PrimalRealization<S> pr = primal_realization(p);
    DualRealization<S> du = dual_realization(p);

    auto complain = [&](int j, int i, const char* what) {
        std::ostringstream os;
        os << "vertex " << j << " facet " << i << ": " << what;
        rep.violations.push_back(os.str());
    };
    auto support_at = [&](const Vec<S>& dir, const Vec<S>& at) {
        SupportResult<S> s = support<S>(Snext, dir);
        return eq(s.value, S(dir.dot(at)));
    };

    for (int j = 0; j < Sk.n_vertices() && rep.pairs < max_pairs; ++j) {
        Vec<S> v = Sk.V.col(j);
        if (lt(S(1), abs(S(pr.C.dot(v) - z)))) continue;  // M is empty for this vertex
        for (int i = 0; i < Sk.n_facets() && rep.pairs < max_pairs; ++i) {
            if (!Sk.I[i][j]) continue;
            ++rep.pairs;
            Vec<S> f = Sk.F.row(i).transpose();
            AlignmentSet<S> M = compute_alignment_set<S>(v, f, z, p);
            for (const auto& piece : M.pieces) {
                std::vector<S> finite_y;
                if (piece.ray_down)
                    finite_y.push_back(piece.y_hi);
                else if (piece.ray_up)
                    finite_y.push_back(piece.y_lo);
                else {
                    finite_y.push_back(piece.y_lo);
                    if (!eq(piece.y_hi, piece.y_lo)) finite_y.push_back(piece.y_hi);
                }
                std::vector<std::pair<S, S>> corners;
                for (const S& u : {piece.u_lo, piece.u_hi})
                    for (const S& ys : finite_y) corners.emplace_back(u, ys);
                if (eq(piece.u_lo, piece.u_hi)) corners.resize(finite_y.size());
                for (const auto& [u, ystar] : corners) {
                    ++rep.points;
                    Vec<S> xplus = pr.A * v + pr.B * u;
                    Vec<S> fplus = du.A * f + du.B * ystar;
                    if (!contains_point<S>(Snext, xplus)) complain(j, i, "propagated point escapes the successor set");
                    if (!support_at(fplus, xplus)) complain(j, i, "propagated direction does not support at the propagated point");
                }
                if (piece.ray_up || piece.ray_down) {
                    Vec<S> ray = piece.ray_up ? du.B : Vec<S>(-du.B);
                    for (const S& u : {piece.u_lo, piece.u_hi}) {
                        Vec<S> xplus = pr.A * v + pr.B * u;
                        if (!support_at(ray, xplus)) complain(j, i, "ray direction does not support at the propagated point");
                    }
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// first-order plants: the set is an interval

template <class S>
std::pair<S, S> interval_cut(const S& lo, const S& hi, const S& z, const PlantModel<S>& p) {
    S c = p.n(1);  // output map; nonzero by coprimality
    S a = (z - S(1)) / c, b = (z + S(1)) / c;
    if (lt(b, a)) std::swap(a, b);
    S nlo = lt(lo, a) ? a : lo;
    S nhi = lt(b, hi) ? b : hi;
    if (lt(nhi, nlo)) throw InfeasibleMeasurement();
    return {nlo, nhi};
}

template <class S>
std::pair<S, S> interval_prop(const S& lo, const S& hi, const PlantModel<S>& p) {
    S a = -p.d(1);  // the 1x1 companion matrix
    S x = a * lo, y = a * hi;
    if (lt(y, x)) std::swap(x, y);
    return {S(x - S(1)), S(y + S(1))};  // B = 1, input segment [-1,1]
}

/// Exact first-order recursion: cut by the slab, map by A, add [-1,1] B.
template <class S>
std::pair<S, S> interval_step(const S& lo, const S& hi, const S& z, const PlantModel<S>& p) {
    auto [clo, chi] = interval_cut<S>(lo, hi, z, p);
    return interval_prop<S>(clo, chi, p);
}

}  // namespace lagset
