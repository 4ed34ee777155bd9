/**
 * Lag plant P = n(λ)/d(λ) and its two companion-form state-space
 * realizations. The primal realization drives the state recursion; the dual
 * realization supplies the facet-normal update A*f and the ray direction B*
 * used by the propagation step.
 */
#pragma once

#include <vector>

#include "lagset/errors.hpp"
#include "lagset/linalg.hpp"
#include "lagset/scalar.hpp"

namespace lagset {

/// Coefficient vectors indexed by power: n(i) multiplies λ^i. A lag plant
/// has n(0) = 0, and d is normalized so d(0) = 1 with d(m) != 0.
template <class S>
struct PlantModel {
    Vec<S> n;
    Vec<S> d;
    int m = 0;

    S dm() const { return d(m); }
    S nm() const { return n(m); }
};

template <class S>
struct PrimalRealization {
    Mat<S> A;  // companion: top-right identity, bottom row (-d_m,...,-d_1)
    Vec<S> B;  // (0,...,0,1)
    Vec<S> C;  // (n_m,...,n_1)
};

template <class S>
struct DualRealization {
    Mat<S> A;  // first column (-d_{m-1},...,-d_0)/d_m, then [I_{m-1}; 0]
    Vec<S> B;  // (n_{m-1},...,n_0) - (d_{m-1},...,d_0) * n_m/d_m
    Vec<S> C;  // (-1/d_m, 0,...,0)
    S D;       // -n_m/d_m
};

namespace detail {

template <class S>
int poly_degree(const Vec<S>& c) {
    for (Eigen::Index i = c.size() - 1; i >= 0; --i)
        if (!is_zero(c(i))) return static_cast<int>(i);
    return -1;
}

/// Remainder of a by b (degrees descending), both as power-indexed vectors.
template <class S>
Vec<S> poly_mod(Vec<S> a, const Vec<S>& b) {
    const int db = poly_degree(b);
    for (int da = poly_degree(a); da >= db; da = poly_degree(a)) {
        S q = a(da) / b(db);
        for (int i = 0; i <= db; ++i) a(da - db + i) -= q * b(i);
        a(da) = S(0);  // force exact cancellation of the lead term
    }
    return a;
}

template <class S>
int poly_gcd_degree(Vec<S> a, Vec<S> b) {
    if (poly_degree(a) < poly_degree(b)) std::swap(a, b);
    while (poly_degree(b) >= 0) {
        Vec<S> r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_degree(a);
}

}  // namespace detail

template <class S>
PlantModel<S> parse_plant(const std::vector<S>& n_coeffs, const std::vector<S>& d_coeffs) {
    if (n_coeffs.size() != d_coeffs.size() || n_coeffs.size() < 2)
        throw Error("plant coefficient lists must share a length of at least 2");
    const int m = static_cast<int>(n_coeffs.size()) - 1;

    PlantModel<S> p;
    p.m = m;
    p.n = Vec<S>(m + 1);
    p.d = Vec<S>(m + 1);
    for (int i = 0; i <= m; ++i) {
        p.n(i) = n_coeffs[i];
        p.d(i) = d_coeffs[i];
    }

    if (!is_zero(p.n(0))) throw FeedthroughNotSupported();
    if (is_zero(p.d(0))) throw SingularD("d_0");
    if (is_zero(p.d(m))) throw SingularD("d_m");
    if (!eq(p.d(0), S(1))) {
        S scale = p.d(0);
        p.n /= scale;
        p.d /= scale;
    }
    if (detail::poly_gcd_degree<S>(p.n, p.d) > 0) throw NotCoprime();
    return p;
}

template <class S>
PrimalRealization<S> primal_realization(const PlantModel<S>& p) {
    const int m = p.m;
    PrimalRealization<S> r;
    r.A = Mat<S>::Zero(m, m);
    for (int i = 0; i + 1 < m; ++i) r.A(i, i + 1) = S(1);
    for (int j = 0; j < m; ++j) r.A(m - 1, j) = -p.d(m - j);
    r.B = Vec<S>::Zero(m);
    r.B(m - 1) = S(1);
    r.C = Vec<S>(m);
    for (int j = 0; j < m; ++j) r.C(j) = p.n(m - j);
    return r;
}

template <class S>
DualRealization<S> dual_realization(const PlantModel<S>& p) {
    const int m = p.m;
    DualRealization<S> r;
    r.A = Mat<S>::Zero(m, m);
    for (int i = 0; i < m; ++i) r.A(i, 0) = -p.d(m - 1 - i) / p.d(m);
    for (int i = 0; i + 1 < m; ++i) r.A(i, i + 1) = S(1);
    r.B = Vec<S>(m);
    for (int i = 0; i < m; ++i) r.B(i) = p.n(m - 1 - i) - p.d(m - 1 - i) * p.n(m) / p.d(m);
    r.C = Vec<S>::Zero(m);
    r.C(0) = S(-1) / p.d(m);
    r.D = -p.n(m) / p.d(m);

    // structural identity used by facet classification: (A*f)_m = -(f)_1/d_m
    for (int j = 0; j < m; ++j) {
        Vec<S> e = Vec<S>::Zero(m);
        e(j) = S(1);
        S last = (r.A * e)(m - 1);
        S expect = -e(0) / p.d(m);
        if (!eq(last, expect)) throw Error("dual realization identity violated");
    }
    return r;
}

}  // namespace lagset
