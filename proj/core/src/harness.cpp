#include "lagset/harness.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <utility>

namespace lagset {

namespace {

using S = Rational;

Vec<S> poly_mul(const Vec<S>& a, const Vec<S>& b) {
    Vec<S> c = Vec<S>::Zero(a.size() + b.size() - 1);
    for (Eigen::Index i = 0; i < a.size(); ++i)
        for (Eigen::Index j = 0; j < b.size(); ++j) c(i + j) += a(i) * b(j);
    return c;
}

PlantModel<S> plant_from_vectors(const Vec<S>& n, const Vec<S>& d) {
    std::vector<S> nv(n.data(), n.data() + n.size());
    std::vector<S> dv(d.data(), d.data() + d.size());
    return parse_plant<S>(nv, dv);
}

/// {x0} as inequality rows, the seed of the oracle mirrors.
HRep<S> point_hrep(const Vec<S>& x) {
    const int m = static_cast<int>(x.size());
    Mat<S> A = Mat<S>::Zero(2 * m, m);
    Vec<S> b(2 * m);
    for (int i = 0; i < m; ++i) {
        A(2 * i, i) = S(1);
        b(2 * i) = x(i);
        A(2 * i + 1, i) = S(-1);
        b(2 * i + 1) = -x(i);
    }
    return make_hrep<S>(std::move(A), std::move(b));
}

/// H intersected with the measurement slab, reduced to minimal rows.
HRep<S> oracle_cut(const HRep<S>& H, const Vec<S>& C, const S& z) {
    const int n = H.n_rows();
    Mat<S> A(n + 2, H.dim);
    Vec<S> b(n + 2);
    A.topRows(n) = H.A;
    b.head(n) = H.b;
    A.row(n) = C.transpose();
    b(n) = z + S(1);
    A.row(n + 1) = -C.transpose();
    b(n + 1) = S(1) - z;
    return remove_redundant<S>(make_hrep<S>(std::move(A), std::move(b)));
}

/// Estimator state against an oracle H-rep, whatever the backing: facet
/// polytopes compare rows and vertices, point clouds compare vertex sets.
bool states_match(const Estimator<S>& est, const HRep<S>& H) {
    if (H.empty) return false;
    if (est.backing() == Estimator<S>::Backing::Facets) return set_equal<S>(est.polytope(), H);
    Mat<S> mine = est.points();
    Mat<S> theirs = detail::enumerate_vertices<S>(H.A, H.b);
    return detail::column_sets_equal<S>(mine, theirs);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v.empty() ? 0.0 : v[v.size() / 2];
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

PlantModel<Rational> random_stable_plant(int order, std::mt19937_64& rng) {
    if (order < 1) throw Error("plant order must be at least 1");
    std::uniform_int_distribution<int> real_root(1, 63);
    std::uniform_int_distribution<int> coin(0, 2);
    std::uniform_int_distribution<int> flip(0, 1);

    Vec<S> d(1);
    d(0) = S(1);
    int remaining = order;
    while (remaining > 0) {
        if (remaining >= 2 && coin(rng) == 0) {
            // conjugate pair: the quadratic 1 - 2a t + (a^2 + b^2) t^2 has
            // roots of modulus 1/sqrt(a^2+b^2) > 1, i.e. poles outside the
            // unit disk, so the companion eigenvalues a +/- ib lie inside
            int qa = 0, qb = 0;
            do {
                qa = std::uniform_int_distribution<int>(-45, 45)(rng);
                qb = std::uniform_int_distribution<int>(1, 45)(rng);
            } while (qa * qa + qb * qb >= 64 * 64);
            S a(qa, 64), b(qb, 64);
            Vec<S> f(3);
            f(0) = S(1);
            f(1) = S(-2) * a;
            f(2) = a * a + b * b;
            d = poly_mul(d, f);
            remaining -= 2;
        } else {
            int q = real_root(rng);
            if (flip(rng)) q = -q;
            S r(q, 64);
            Vec<S> f(2);
            f(0) = S(1);
            f(1) = -r;
            d = poly_mul(d, f);
            remaining -= 1;
        }
    }

    std::uniform_int_distribution<int> num_coeff(-16, 16);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Vec<S> n = Vec<S>::Zero(order + 1);
        for (int i = 1; i <= order; ++i) n(i) = S(num_coeff(rng), 16);
        if (is_zero_vec<S>(n)) continue;
        try {
            return plant_from_vectors(n, d);
        } catch (const NotCoprime&) {
            continue;
        }
    }
    // the numerator "t" shares no factor with any denominator with d_0 = 1
    Vec<S> n = Vec<S>::Zero(order + 1);
    n(1) = S(1);
    return plant_from_vectors(n, d);
}

VerifyOutcome verify_scenario(const Scenario<Rational>& sc) {
    VerifyOutcome out;
    auto fail = [&](int k, const std::string& msg) {
        out.ok = false;
        out.failures.push_back("step " + std::to_string(k) + ": " + msg);
    };

    const PlantModel<S>& p = sc.plant;
    PrimalRealization<S> pr = primal_realization(p);
    Estimator<S> utp(p, sc.x0, StepMode::UpdateThenPropagate);
    Estimator<S> ptu(p, sc.x0, StepMode::PropagateThenUpdate);
    HRep<S> h_utp = point_hrep(sc.x0);
    HRep<S> h_ptu = h_utp;

    const int K = static_cast<int>(sc.measurements.size());
    for (int k = 0; k < K; ++k) {
        const S& z = sc.measurements[k];
        const HRep<S> h_utp_prev = h_utp;
        const bool utp_was_facets = utp.backing() == Estimator<S>::Backing::Facets;
        Polytope<S> utp_prev_set;
        if (utp_was_facets) utp_prev_set = utp.polytope();

        utp.observe(z);
        ptu.observe(z);
        h_utp = oracle_step<S>(h_utp, z, p, StepMode::UpdateThenPropagate).H;
        h_ptu = (k == 0) ? oracle_cut(h_ptu, pr.C, z)
                         : oracle_step<S>(h_ptu, z, p, StepMode::PropagateThenUpdate).H;

        if (!states_match(utp, h_utp)) fail(k, "oracle: update-then-propagate state disagrees with the projection oracle");
        if (!states_match(ptu, h_ptu)) fail(k, "oracle: propagate-then-update state disagrees with the projection oracle");

        // order interleaving: the measurement-consistent state equals the
        // previous predicted state cut by the current slab
        if (!states_match(ptu, oracle_cut(h_utp_prev, pr.C, z)))
            fail(k, "order: cut of the predicted state disagrees with the updated state");

        for (auto* est : {&utp, &ptu}) {
            const char* who = est == &utp ? "update-then-propagate" : "propagate-then-update";
            if (const auto& rep = est->last_report()) {
                if (rep->n_f_after > rep->n_f_before + rep->n_ridges)
                    fail(k, "bound: " + std::string(who) + " facet growth bound violated");
                if (rep->n_v_after > 2 * rep->n_v_before)
                    fail(k, "bound: " + std::string(who) + " vertex growth bound violated");
                if (!rep->updown_counts_preserved)
                    fail(k, "bound: " + std::string(who) + " propagated facet changed its incident vertex count");
            }
            if (est->backing() == Estimator<S>::Backing::Facets) {
                ValidationReport v = validate<S>(est->polytope());
                if (!v.ok()) fail(k, "validate: " + std::string(who) + " state invalid: " + v.describe());
            }
        }

        if (utp_was_facets && utp.backing() == Estimator<S>::Backing::Facets) {
            VerificationReport rep = verify_alignment<S>(utp_prev_set, utp.polytope(), z, p, 2000);
            out.alignment_pairs += rep.pairs;
            out.alignment_points += rep.points;
            for (const auto& v : rep.violations) fail(k, "alignment: " + v);
        }

        if (static_cast<int>(sc.states.size()) > k + 1) {  // replayed scenarios record no trajectory
            if (!utp.contains(sc.states[k + 1])) fail(k, "containment: true state escaped the predicted set");
            if (!ptu.contains(sc.states[k])) fail(k, "containment: true state escaped the updated set");
        }
        out.steps_done = k + 1;
    }
    return out;
}

std::vector<BenchRecord> bench_run(const BenchOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    PlantModel<S> plant = random_stable_plant(opt.order, rng);
    Scenario<S> sc = make_scenario<S>(plant, opt.steps, opt.seed + 1);
    PrimalRealization<S> pr = primal_realization(plant);

    Estimator<S> est(plant, sc.x0, StepMode::PropagateThenUpdate);
    HRep<S> mirror = point_hrep(sc.x0);
    bool censored = false;

    std::vector<BenchRecord> out;
    for (int k = 0; k < static_cast<int>(sc.measurements.size()); ++k) {
        const S& z = sc.measurements[k];
        BenchRecord rec;
        rec.order = opt.order;
        rec.k = k;
        const bool was_facets = est.backing() == Estimator<S>::Backing::Facets;
        rec.n_f = was_facets ? est.polytope().n_facets() : 0;

        if (was_facets) {
            Polytope<S> input = est.polytope();
            std::vector<double> ts;
            for (int r = 0; r < opt.repeats; ++r) {
                const auto t0 = std::chrono::steady_clock::now();
                auto stepped = step<S>(input, z, plant, StepMode::PropagateThenUpdate);
                ts.push_back(seconds_since(t0));
                (void)stepped;
            }
            rec.t_fv = median(std::move(ts));
        }
        est.observe(z);

        if (!censored) {
            try {
                std::vector<double> ts;
                HRep<S> next;
                for (int r = 0; r < opt.repeats; ++r) {
                    const auto t0 = std::chrono::steady_clock::now();
                    next = (k == 0) ? oracle_cut(mirror, pr.C, z)
                                    : oracle_step<S>(mirror, z, plant, StepMode::PropagateThenUpdate,
                                                     opt.fm_row_guard)
                                          .H;
                    ts.push_back(seconds_since(t0));
                }
                rec.t_fm = median(std::move(ts));
                mirror = std::move(next);
                rec.equal = est.backing() == Estimator<S>::Backing::Facets
                                ? set_equal_rows<S>(est.polytope(), mirror)
                                : states_match(est, mirror);
            } catch (const FmRowGuard&) {
                censored = true;
            }
        }
        rec.censored = censored;
        out.push_back(rec);
    }
    return out;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
    std::ostringstream os;
    os << "order,k,n_f,t_fv_seconds,t_fm_seconds,ratio,equal\n";
    for (const auto& r : records) {
        os << r.order << ',' << r.k << ',' << r.n_f << ',';
        if (r.n_f > 0) os << r.t_fv;
        os << ',';
        if (!r.censored) os << r.t_fm;
        os << ',';
        if (!r.censored && r.n_f > 0 && r.t_fv > 0.0) os << r.t_fm / r.t_fv;
        os << ',';
        os << (r.censored ? "guard" : r.equal ? "1" : "0");
        os << '\n';
    }
    return os.str();
}

}  // namespace lagset
