#include <ostream>

#include "lagset/harness.hpp"
#include "lagset/json_io.hpp"

namespace lagset {

namespace {

using S = Rational;

Mat<S> two_by(std::initializer_list<S> rowmajor, int cols) {
    Mat<S> A(static_cast<int>(rowmajor.size()) / cols, cols);
    int k = 0;
    for (const S& v : rowmajor) {
        A(k / cols, k % cols) = v;
        ++k;
    }
    return A;
}

std::string vec_str(const Vec<S>& v) {
    std::string s = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += scalar_str<S>(v(i));
    }
    return s + ")";
}

void print_matrix(std::ostream& os, const char* name, const Mat<S>& A) {
    const std::string pad(std::string(name).size() + 5, ' ');
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
        os << (r == 0 ? "  " + std::string(name) + " = " : pad) << "[";
        for (Eigen::Index c = 0; c < A.cols(); ++c) os << ' ' << A(r, c);
        os << " ]\n";
    }
}

void print_polytope(std::ostream& os, const Polytope<S>& P) {
    os << "  " << P.n_vertices() << " vertices, " << P.n_facets() << " facets\n";
    for (int j = 0; j < P.n_vertices(); ++j) os << "    v" << j << " = " << vec_str(P.V.col(j)) << "\n";
    for (int i = 0; i < P.n_facets(); ++i) {
        os << "    f" << i << ": <" << vec_str(P.F.row(i).transpose()) << ", x> <= " << P.h(i)
           << "   incidence " << bits_str(P.I[i]) << "\n";
    }
}

void print_plant(std::ostream& os, const PlantModel<S>& p) {
    auto poly_str = [](const Vec<S>& c) {
        std::string s;
        for (Eigen::Index i = 0; i < c.size(); ++i) {
            if (is_zero(c(i))) continue;
            const bool neg = sign(c(i)) < 0;
            s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
            S mag = abs(c(i));
            if (i == 0 || !eq(mag, S(1))) s += scalar_str<S>(mag);
            if (i >= 1) s += "t";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s.empty() ? std::string("0") : s;
    };
    os << "plant: n(t) = " << poly_str(p.n) << ",  d(t) = " << poly_str(p.d) << "\n";
    PrimalRealization<S> pr = primal_realization(p);
    DualRealization<S> du = dual_realization(p);
    print_matrix(os, "A", pr.A);
    os << "  B = " << vec_str(pr.B) << "   C = " << vec_str(pr.C) << "\n";
    print_matrix(os, "A*", du.A);
    os << "  B* = " << vec_str(du.B) << "   C* = " << vec_str(du.C) << "   D* = " << du.D << "\n";
}

PlantModel<S> square_plant() {
    return parse_plant<S>({S(0), S(1), S(0)}, {S(1), S(0), S(-1)});
}

std::string halved_bits(const BitRow& bits, int nv) {
    std::string s = bits_str(bits);
    return s.substr(0, nv) + "|" + s.substr(nv);
}

void propagation_walkthrough(std::ostream& os, const Polytope<S>& P, const PlantModel<S>& p) {
    print_plant(os, p);
    os << "\ninput set:\n";
    print_polytope(os, P);

    TableTrace<S> tr;
    LagPropagateOptions<S> opt;
    opt.trace = &tr;
    auto [next, rep] = lag_propagate<S>(P, p, opt);

    os << "\nfacet classes (by sign of d_m (f)_1): up " << bits_str(tr.up_mask) << ", down "
       << bits_str(tr.down_mask) << ", zero " << bits_str(tr.zero_mask) << "\n";
    os << "vertices propagating up: " << bits_str(tr.ivpt) << ", down: " << bits_str(tr.ivpb) << "\n";

    os << "\nshifted-up vertex columns A v + B:\n";
    for (int j = 0; j < tr.gT.cols(); ++j) os << "    " << vec_str(tr.gT.col(j)) << "\n";
    os << "shifted-down vertex columns A v - B:\n";
    for (int j = 0; j < tr.gB.cols(); ++j) os << "    " << vec_str(tr.gB.col(j)) << "\n";

    const int nf = P.n_facets(), nv = P.n_vertices();
    os << "\nup block (one row per up facet, over shifted-up columns):\n";
    for (int i = 0; i < nf; ++i)
        if (tr.up_mask[i]) os << "    f" << i << ": " << bits_str(tr.block_up[i]) << "\n";
    os << "down block (one row per down facet, over shifted-down columns):\n";
    for (int i = 0; i < nf; ++i)
        if (tr.down_mask[i]) os << "    f" << i << ": " << bits_str(tr.block_down[i]) << "\n";
    if (tr.zero_mask.any()) {
        os << "zero block (up half / down half):\n";
        for (int i = 0; i < nf; ++i)
            if (tr.zero_mask[i])
                os << "    f" << i << ": " << bits_str(tr.block_zero_up[i]) << " / "
                   << bits_str(tr.block_zero_down[i]) << "\n";
    }
    if (!tr.ridge_pairs.empty()) {
        os << "qualifying ridges (facet pairs with opposite first components):\n";
        for (std::size_t l = 0; l < tr.ridge_pairs.size(); ++l) {
            os << "    r" << l << ": f" << tr.ridge_pairs[l].first << " x f" << tr.ridge_pairs[l].second
               << ", common vertices " << bits_str(tr.ridge_verts[l]) << ", interpolated direction "
               << vec_str(tr.ridge_dirs[l]) << "\n";
            os << "        rows: " << bits_str(tr.ridge_up[l]) << " / " << bits_str(tr.ridge_down[l]) << "\n";
        }
    }

    os << "\nassembled candidate rows, " << tr.pre_rows.size() << " = 3 x " << nf << " facet rows + "
       << tr.ridge_pairs.size() << " ridge rows (bits: shifted-up half | shifted-down half):\n";
    for (std::size_t r = 0; r < tr.pre_rows.size(); ++r)
        os << "    direction " << vec_str(tr.pre_dirs[r]) << "  " << halved_bits(tr.pre_rows[r], nv) << "\n";
    os << "pruned " << rep.pruned_zero_rows << " empty rows and " << rep.pruned_zero_cols
       << " empty columns, merged " << rep.merged_columns << " duplicate columns\n";

    os << "\nresult:\n";
    print_polytope(os, next);
}

void example_square(std::ostream& os) {
    os << "-- square: one propagation of the unit box --\n\n";
    Mat<S> A = two_by({S(1), S(0), S(-1), S(0), S(0), S(1), S(0), S(-1)}, 2);
    Vec<S> b(4);
    b << S(1), S(1), S(1), S(1);
    propagation_walkthrough(os, from_halfspaces<S>(A, b), square_plant());
}

void example_diamond(std::ostream& os) {
    os << "-- diamond: a propagation that needs ridge rows --\n\n";
    Mat<S> A = two_by({S(1), S(1), S(1), S(-1), S(-1), S(1), S(-1), S(-1)}, 2);
    Vec<S> b(4);
    b << S(1), S(1), S(1), S(1);
    propagation_walkthrough(os, from_halfspaces<S>(A, b), square_plant());
}

void example_fig1(std::ostream& os) {
    os << "-- fig1: alignment set of a single vertex/facet contact --\n\n";
    PlantModel<S> p = square_plant();
    print_plant(os, p);
    Vec<S> x = Vec<S>::Zero(2);
    Vec<S> f(2);
    f << S(1), S(0);
    S z(0);
    os << "\nstate x = " << vec_str(x) << ", measurement z = " << z << ", facet direction f = " << vec_str(f)
       << "\n";
    os << "output y = <C, x> = " << primal_realization(p).C.dot(x) << ", strictly inside the slab, so y* = 0\n";
    DualLine<S> L = dual_line<S>(f, p);
    os << "dual line: " << L.ny << " y* + " << L.du << " u* = " << L.rhs << ", so u*(0) = "
       << S(L.rhs / p.dm()) << " > 0 forces u = 1\n";
    AlignmentSet<S> M = compute_alignment_set<S>(x, f, z, p);
    os << "alignment set M = {";
    for (std::size_t i = 0; i < M.pieces.size(); ++i) {
        const auto& pc = M.pieces[i];
        if (i) os << ", ";
        os << "(u in [" << pc.u_lo << ", " << pc.u_hi << "], y* in ";
        if (pc.ray_down)
            os << "(-inf, " << pc.y_hi << "]";
        else if (pc.ray_up)
            os << "[" << pc.y_lo << ", inf)";
        else
            os << "[" << pc.y_lo << ", " << pc.y_hi << "]";
        os << ")";
    }
    os << "}\n";
    if (M.is_single_point(S(1), S(0))) os << "M is the single pair (u, y*) = (1, 0)\n";
}

}  // namespace

void run_example(const std::string& name, std::ostream& os) {
    if (name == "fig1")
        example_fig1(os);
    else if (name == "square")
        example_square(os);
    else if (name == "diamond")
        example_diamond(os);
    else
        throw UnknownExample(name);
}

}  // namespace lagset
