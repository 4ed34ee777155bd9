#include <doctest.h>

#include <random>

#include "helpers.hpp"

using namespace lagset;
using test::S;
using test::frac;

TEST_CASE("transfer coefficients are validated and normalized") {
    auto p = parse_plant<S>({S(0), S(2), S(0)}, {S(2), S(0), S(-2)});
    CHECK(p.m == 2);
    // leading denominator coefficient is scaled to 1, numerator follows
    CHECK(p.d(0) == S(1));
    CHECK(p.n(1) == S(1));
    CHECK(p.d(2) == S(-1));
    CHECK(p.dm() == S(-1));
    CHECK(p.nm() == S(0));

    CHECK_THROWS_AS(parse_plant<S>({S(1), S(1)}, {S(1), S(2)}), FeedthroughNotSupported);
    CHECK_THROWS_AS(parse_plant<S>({S(0), S(1), S(1)}, {S(1), S(1), S(0)}), SingularD);
    CHECK_THROWS_AS(parse_plant<S>({S(0), S(1)}, {S(0), S(1)}), SingularD);
    // n = t + t^2 and d = 1 - t^2 share the factor 1 + t
    CHECK_THROWS_AS(parse_plant<S>({S(0), S(1), S(1)}, {S(1), S(0), S(-1)}), NotCoprime);
    CHECK_THROWS_AS(parse_plant<S>({S(0), S(1)}, {S(1)}), Error);
    CHECK_THROWS_AS(parse_plant<S>({S(0)}, {S(1)}), Error);
}

TEST_CASE("state space forms for a second order plant") {
    // n(t) = t^2, d(t) = 1 + 3t + 2t^2
    auto p = parse_plant<S>({S(0), S(0), S(1)}, {S(1), S(3), S(2)});
    auto pr = primal_realization(p);
    CHECK(test::same_matrix(pr.A, test::rows({{S(0), S(1)}, {S(-2), S(-3)}})));
    CHECK(vec_eq<S>(pr.B, test::vec({S(0), S(1)})));
    CHECK(vec_eq<S>(pr.C, test::vec({S(1), S(0)})));

    auto du = dual_realization(p);
    CHECK(test::same_matrix(du.A, test::rows({{frac(-3, 2), S(1)}, {frac(-1, 2), S(0)}})));
    CHECK(vec_eq<S>(du.B, test::vec({frac(-3, 2), frac(-1, 2)})));
    CHECK(vec_eq<S>(du.C, test::vec({frac(-1, 2), S(0)})));
    CHECK(du.D == frac(-1, 2));
}

TEST_CASE("dual form is the inverse transpose of the primal") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
        int order = 1 + static_cast<int>(rng() % 4);
        auto p = random_stable_plant(order, rng);
        auto pr = primal_realization(p);
        auto du = dual_realization(p);
        Mat<S> prod = du.A.transpose() * pr.A;
        for (int i = 0; i < p.m; ++i)
            for (int j = 0; j < p.m; ++j) CHECK(prod(i, j) == (i == j ? S(1) : S(0)));
        // the dual input column is the dual image of the output functional
        CHECK(vec_eq<S>(du.B, Vec<S>(du.A * pr.C)));
        // row index m of the dual map only sees the first coordinate
        for (int j = 0; j < p.m; ++j) {
            Vec<S> f = Vec<S>::Zero(p.m);
            f(j) = S(1);
            Vec<S> img = du.A * f;
            CHECK(img(p.m - 1) == -f(0) / p.dm());
        }
    }
}

TEST_CASE("random plants are stable and reproducible") {
    std::mt19937_64 a(7), b(7);
    for (int i = 0; i < 20; ++i) {
        auto p = random_stable_plant(3, a);
        auto q = random_stable_plant(3, b);
        CHECK(vec_eq<S>(p.n, q.n));
        CHECK(vec_eq<S>(p.d, q.d));
        CHECK(p.m == 3);
        CHECK(p.d(0) == S(1));
        CHECK(is_zero(p.n(0)));
    }
    CHECK_THROWS_AS(random_stable_plant(0, a), Error);
}
