#include <doctest.h>

#include "helpers.hpp"

using namespace lagset;
using test::S;
using test::frac;
using test::vec;

TEST_CASE("facet classes follow the sign of the propagated first coordinate") {
    auto p = test::square_plant();
    auto sq = test::unit_square();
    auto cls = classify_facets(sq, p);
    // facet order: (1,0), (-1,0), (0,1), (0,-1)
    CHECK(cls.up.count() == 1);
    CHECK(cls.up[0]);
    CHECK(cls.down.count() == 1);
    CHECK(cls.down[1]);
    CHECK(cls.zero.count() == 2);
    CHECK(cls.zero[2]);
    CHECK(cls.zero[3]);

    auto dia = test::unit_diamond();
    auto cd = classify_facets(dia, p);
    // diamond facet order: (1,1), (1,-1), (-1,1), (-1,-1)
    CHECK(cd.up[0]);
    CHECK(cd.up[1]);
    CHECK(cd.down[2]);
    CHECK(cd.down[3]);
    CHECK(cd.zero.none());
}

TEST_CASE("measurement slab intersection") {
    auto p = test::square_plant();
    auto sq = test::unit_square();

    SUBCASE("generic cut adds one facet and keeps the rest") {
        auto cut = slab_cut(sq, measurement_slab(p, frac(3, 2)));
        CHECK(validate(cut).ok());
        CHECK(cut.n_vertices() == 4);
        CHECK(cut.n_facets() == 4);
        CHECK(test::has_vertex(cut, vec({S(1), frac(1, 2)})));
        CHECK(test::has_vertex(cut, vec({S(-1), frac(1, 2)})));
        CHECK(test::has_vertex(cut, vec({S(1), S(1)})));
        CHECK(test::has_vertex(cut, vec({S(-1), S(1)})));
        CHECK(test::has_facet(cut, vec({S(0), S(-1)}), frac(-1, 2)));
        CHECK(test::has_facet(cut, vec({S(0), S(1)}), S(1)));
    }

    SUBCASE("slab containing the set leaves it unchanged") {
        auto cut = slab_cut(sq, measurement_slab(p, S(0)));
        CHECK(test::same_polytope(cut, sq));
    }

    SUBCASE("disjoint slab is infeasible") {
        CHECK_THROWS_AS(slab_cut(sq, measurement_slab(p, S(10))), InfeasibleMeasurement);
        CHECK_THROWS_AS(slab_cut(sq, measurement_slab(p, S(-10))), InfeasibleMeasurement);
    }

    SUBCASE("slab touching only a face degenerates") {
        CHECK_THROWS_AS(slab_cut(sq, measurement_slab(p, S(2))), DegenerateCut);
        CHECK_THROWS_AS(slab_cut(sq, measurement_slab(p, S(-2))), DegenerateCut);
    }
}

TEST_CASE("propagation of the unit square has no qualifying ridges") {
    auto p = test::square_plant();
    auto [out, rep] = lag_propagate(test::unit_square(), p);
    CHECK(validate(out).ok());
    CHECK(out.n_vertices() == 4);
    CHECK(out.n_facets() == 4);
    for (const S& sx : {S(1), S(-1)})
        for (const S& sy : {S(2), S(-2)}) CHECK(test::has_vertex(out, vec({sx, sy})));
    CHECK(test::has_facet(out, vec({S(0), S(1)}), S(2)));
    CHECK(test::has_facet(out, vec({S(0), S(-1)}), S(2)));
    CHECK(test::has_facet(out, vec({S(1), S(0)}), S(1)));
    CHECK(test::has_facet(out, vec({S(-1), S(0)}), S(1)));

    CHECK(rep.n_f_before == 4);
    CHECK(rep.n_v_before == 4);
    CHECK(rep.n_ridges == 0);
    CHECK(rep.n_f_after == 4);
    CHECK(rep.n_v_after == 4);
    CHECK(rep.pruned_zero_rows == 8);
    CHECK(rep.pruned_zero_cols == 4);
    CHECK(rep.merged_columns == 0);
    CHECK(rep.updown_counts_preserved);
}

TEST_CASE("propagation of the diamond grows two ridge facets") {
    auto p = test::square_plant();
    auto [out, rep] = lag_propagate(test::unit_diamond(), p);
    CHECK(validate(out).ok());
    CHECK(out.n_vertices() == 6);
    CHECK(out.n_facets() == 6);
    CHECK(test::has_vertex(out, vec({S(0), S(2)})));
    CHECK(test::has_vertex(out, vec({S(0), S(-2)})));
    CHECK(test::has_vertex(out, vec({S(1), S(1)})));
    CHECK(test::has_vertex(out, vec({S(-1), S(-1)})));
    // the ridge rows become the vertical facets of the hexagon
    CHECK(test::has_facet(out, vec({S(1), S(0)}), S(1)));
    CHECK(test::has_facet(out, vec({S(-1), S(0)}), S(1)));
    CHECK(test::has_facet(out, vec({S(1), S(1)}), S(2)));

    CHECK(rep.n_ridges == 2);
    CHECK(rep.n_f_after == rep.n_f_before + rep.n_ridges);  // growth bound tight here
    CHECK(rep.n_v_after <= 2 * rep.n_v_before);
    CHECK(rep.pruned_zero_rows == 8);
    CHECK(rep.pruned_zero_cols == 2);
    CHECK(rep.merged_columns == 0);
    CHECK(rep.updown_counts_preserved);
}

TEST_CASE("dropping the ridge rows breaks the representation") {
    auto p = test::square_plant();
    LagPropagateOptions<S> opt;
    opt.ridge_rows = false;
    auto [out, rep] = lag_propagate(test::unit_diamond(), p, opt);
    CHECK(rep.n_ridges == 0);
    // vertices like (1,1) now lie on a single facet: validation must object
    CHECK_FALSE(validate(out).ok());
}

TEST_CASE("propagation demands a full dimensional input") {
    auto p = test::square_plant();
    Polytope<S> pt;
    pt.V = Mat<S>::Zero(2, 1);
    pt.F = Mat<S>(0, 2);
    pt.h = Vec<S>(0);
    CHECK_THROWS_AS(lag_propagate(pt, p), NotFullDimensional);

    Polytope<S> segment;
    segment.V = test::points({{S(0), S(0)}, {S(1), S(1)}});
    segment.F = Mat<S>(0, 2);
    segment.h = Vec<S>(0);
    CHECK_THROWS_AS(lag_propagate(segment, p), NotFullDimensional);
}

TEST_CASE("full step in both orderings") {
    auto p = test::square_plant();
    auto sq = test::unit_square();

    auto [utp, rep] = step(sq, frac(3, 2), p, StepMode::UpdateThenPropagate);
    CHECK(validate(utp).ok());
    CHECK(utp.n_vertices() == 4);
    CHECK(test::has_vertex(utp, vec({frac(1, 2), S(2)})));
    CHECK(test::has_vertex(utp, vec({frac(1, 2), S(-2)})));
    CHECK(test::has_vertex(utp, vec({S(1), S(2)})));
    CHECK(test::has_vertex(utp, vec({S(1), S(-2)})));
    CHECK(rep.cut_seconds >= 0.0);
    CHECK(rep.propagate_seconds >= 0.0);

    auto [utp0, r0] = step(sq, S(0), p, StepMode::UpdateThenPropagate);
    CHECK(utp0.n_vertices() == 4);
    CHECK(test::has_vertex(utp0, vec({S(1), S(2)})));

    auto [ptu0, r1] = step(sq, S(0), p, StepMode::PropagateThenUpdate);
    CHECK(test::same_polytope(ptu0, sq));  // propagated square cut back to the square

    CHECK_THROWS_AS(step(sq, S(10), p, StepMode::UpdateThenPropagate), InfeasibleMeasurement);
    CHECK_THROWS_AS(step(sq, S(2), p, StepMode::UpdateThenPropagate), DegenerateCut);
}

TEST_CASE("dual line of a facet") {
    auto p = test::square_plant();
    auto dl = dual_line(vec({S(1), S(0)}), p);
    CHECK(dl.ny == S(0));   // numerator lead coefficient
    CHECK(dl.du == S(-1));  // denominator lead coefficient
    CHECK(dl.rhs == S(-1));

    auto p2 = parse_plant<S>({S(0), S(0), S(1)}, {S(1), S(3), S(2)});
    auto dl2 = dual_line(vec({frac(1, 2), S(7)}), p2);
    CHECK(dl2.ny == S(1));
    CHECK(dl2.du == S(2));
    CHECK(dl2.rhs == frac(-1, 2));
}

TEST_CASE("alignment predicate on boundary and interior combinations") {
    // arguments: output y, input u, slab multiplier y*, input multiplier u*, measurement z
    CHECK(aligned(S(1), S(1), S(0), S(2), S(0)));
    CHECK(aligned(S(0), frac(1, 2), S(0), S(0), S(0)));
    CHECK(aligned(S(1), frac(1, 2), S(1), S(0), S(0)));         // output on the slab top
    CHECK_FALSE(aligned(S(0), frac(1, 2), S(1), S(0), S(0)));   // positive y* off the top
    CHECK_FALSE(aligned(S(0), frac(1, 2), S(0), S(1), S(0)));   // positive u* without u = 1
    CHECK_FALSE(aligned(S(1), S(1), S(-1), S(0), S(0)));        // negative y* off the bottom
    CHECK_FALSE(aligned(S(0), frac(1, 2), S(0), S(-1), S(0)));  // interior input, nonzero u*
}

TEST_CASE("alignment sets: interior, boundary, and empty cases") {
    auto p = test::square_plant();

    SUBCASE("interior measurement pins the input") {
        auto M = compute_alignment_set(vec({S(0), S(0)}), vec({S(1), S(0)}), S(0), p);
        CHECK(M.is_single_point(S(1), S(0)));
        auto Mn = compute_alignment_set(vec({S(0), S(0)}), vec({S(-1), S(0)}), S(0), p);
        CHECK(Mn.is_single_point(S(-1), S(0)));
    }

    SUBCASE("interior with a vanishing first coordinate frees the input") {
        auto M = compute_alignment_set(vec({S(0), S(0)}), vec({S(0), S(1)}), S(0), p);
        CHECK(M.contains(frac(1, 2), S(0)));
        CHECK(M.contains(S(-1), S(0)));
        CHECK_FALSE(M.contains(frac(1, 2), frac(1, 2)));
        CHECK_FALSE(M.contains(frac(3, 2), S(0)));
    }

    SUBCASE("state outside the slab yields an empty set") {
        auto M = compute_alignment_set(vec({S(0), S(2)}), vec({S(1), S(0)}), S(0), p);
        CHECK(M.is_empty());
    }

    SUBCASE("slab boundary opens a multiplier ray") {
        // x on the top of the slab: y* may grow without bound
        auto M = compute_alignment_set(vec({S(0), S(1)}), vec({S(1), S(0)}), S(0), p);
        CHECK_FALSE(M.is_empty());
        CHECK(M.contains(S(1), S(0)));
        CHECK(M.contains(S(1), S(100)));
        CHECK_FALSE(M.contains(S(1), S(-1)));
        bool has_ray = false;
        for (const auto& piece : M.pieces) has_ray |= piece.ray_up || piece.ray_down;
        CHECK(has_ray);
    }
}

TEST_CASE("alignment sets agree with direct enumeration of the conditions") {
    auto brute = [](const Vec<S>& x, const Vec<S>& f, const S& z, const PlantModel<S>& p,
                    const S& u, const S& ys) {
        auto pr = primal_realization(p);
        S y = pr.C.dot(x);
        if (lt(S(1), abs(u))) return false;
        if (lt(S(1), abs(S(y - z)))) return false;
        S us = (S(-f(0)) - p.nm() * ys) / p.dm();
        return aligned<S>(y, u, ys, us, z);
    };

    std::vector<S> us = {S(-1), frac(-1, 2), S(0), frac(1, 2), S(1)};
    std::vector<S> yss = {S(-2), frac(-3, 2), S(-1), frac(-1, 2), S(0),
                          frac(1, 2), S(1), frac(3, 2), S(2)};

    auto sweep = [&](const PlantModel<S>& p, const Vec<S>& x, const Vec<S>& f, const S& z) {
        auto M = compute_alignment_set(x, f, z, p);
        for (const S& u : us)
            for (const S& ys : yss) {
                CAPTURE(scalar_str<S>(u));
                CAPTURE(scalar_str<S>(ys));
                CHECK(M.contains(u, ys) == brute(x, f, z, p, u, ys));
            }
    };

    auto p1 = test::square_plant();  // numerator lead 0: the dual line is horizontal
    auto p2 = parse_plant<S>({S(0), S(0), S(1)}, {S(1), S(3), S(2)});
    std::vector<Vec<S>> fs = {vec({S(1), S(0)}), vec({S(-1), S(0)}), vec({S(0), S(1)}),
                              vec({S(2), S(-3)})};
    for (const auto& f : fs) {
        for (const S& x2 : {S(0), S(1), S(-1), S(2)})
            sweep(p1, vec({S(0), x2}), f, S(0));
        // p2 reads the first coordinate: sweep interior and both slab boundaries
        for (const S& x1 : {S(0), frac(3, 2), frac(-1, 2)})
            sweep(p2, vec({x1, S(7)}), f, frac(1, 2));
    }
}

TEST_CASE("stepwise verification accepts the true successor and flags fakes") {
    auto p = test::square_plant();
    auto sq = test::unit_square();
    S z = frac(3, 2);
    auto [next, rep] = step(sq, z, p, StepMode::UpdateThenPropagate);

    auto good = verify_alignment(sq, next, z, p);
    CHECK(good.ok());
    CHECK(good.pairs > 0);
    CHECK(good.points > 0);

    // wrong successor: propagated points fall outside
    auto wrong = verify_alignment(sq, sq, z, p);
    CHECK_FALSE(wrong.ok());

    // stretching the successor's vertices breaks the support equalities
    auto stretched = next;
    stretched.V *= S(2);
    auto bad = verify_alignment(sq, stretched, z, p);
    CHECK_FALSE(bad.ok());
}

TEST_CASE("first order plants reduce to interval arithmetic") {
    auto p = parse_plant<S>({S(0), S(1)}, {S(1), frac(-1, 2)});
    auto [plo, phi] = interval_prop(S(-1), S(1), p);
    CHECK(plo == frac(-3, 2));
    CHECK(phi == frac(3, 2));

    auto [clo, chi] = interval_cut(S(-1), S(1), frac(3, 2), p);
    CHECK(clo == frac(1, 2));
    CHECK(chi == S(1));
    auto [slo, shi] = interval_step(S(-1), S(1), frac(3, 2), p);
    CHECK(slo == frac(-3, 4));
    CHECK(shi == frac(3, 2));

    CHECK_THROWS_AS(interval_cut(S(-1), S(1), S(5), p), InfeasibleMeasurement);
    // touching cut collapses the interval to a point but stays feasible
    auto [tlo, thi] = interval_cut(S(-1), S(1), S(2), p);
    CHECK(tlo == S(1));
    CHECK(thi == S(1));

    // a negative output gain flips the slab before intersecting
    auto pneg = parse_plant<S>({S(0), S(-1)}, {S(1), frac(1, 2)});
    auto [nlo, nhi] = interval_cut(S(-1), S(1), frac(3, 2), pneg);
    CHECK(nlo == S(-1));
    CHECK(nhi == frac(-1, 2));
}
