#pragma once

#include <array>
#include <string>

#include "oge/types.hpp"

namespace oge {

/// 3x3 operator relating the cross product to the Lie bracket,
/// L_u v = L(u x v), with the column convention L(v_a) = sum_b L_ba v_b.
template <class S>
struct OperatorL {
    std::array<std::array<S, 3>, 3> m{};  // m[row][col], 0-based
    S& operator()(int r, int c) { return m[r - 1][c - 1]; }
    const S& operator()(int r, int c) const { return m[r - 1][c - 1]; }
};

template <class S>
OperatorL<S> L1(const S& alpha, const S& beta, const S& gamma) {
    OperatorL<S> L;
    L(1, 1) = alpha;
    L(2, 2) = beta;
    L(3, 3) = gamma;
    return L;
}

template <class S>
OperatorL<S> L2(const S& alpha, const S& beta, const S& gamma) {
    if (scalar_ops<S>::is_zero(beta, 0.0))
        throw std::invalid_argument("L2 requires beta != 0");
    OperatorL<S> L;
    L(1, 1) = gamma;
    L(2, 2) = alpha;
    L(2, 3) = -beta;
    L(3, 2) = beta;
    L(3, 3) = alpha;
    return L;
}

template <class S>
OperatorL<S> L3(int eta, const S& alpha, const S& beta) {
    if (eta != 1 && eta != -1) throw std::invalid_argument("L3 requires eta = +-1");
    OperatorL<S> L;
    S h2 = scalar_ops<S>::frac(eta, 2);
    L(1, 1) = beta;
    L(2, 2) = h2 + alpha;
    L(2, 3) = h2;
    L(3, 2) = -h2;
    L(3, 3) = -h2 + alpha;
    return L;
}

template <class S>
OperatorL<S> L5(const S& alpha) {
    OperatorL<S> L;
    S r = scalar_ops<S>::sqrt(scalar_ops<S>::frac(1, 2));
    L(1, 1) = alpha;
    L(1, 2) = r;
    L(2, 1) = r;
    L(2, 2) = alpha;
    L(2, 3) = r;
    L(3, 2) = -r;
    L(3, 3) = alpha;
    return L;
}

/// Lie bracket from an operator of the unified shape
///   [[alpha, lambda, 0], [lambda, beta, mu], [0, eps2 eps3 mu, gamma]]:
/// L_{v1}v2 = eps3 L(v3), L_{v2}v3 = eps1 L(v1), L_{v3}v1 = eps2 L(v2).
/// Sign constraints: eps1 = eps2 and, when L is non-diagonal, eps3 = -eps2.
template <class S>
MetricLieAlgebra<S> bracket_from_L(const OperatorL<S>& L, const std::array<int, 3>& eps,
                                   double tol = 0.0) {
    auto zero = [&](const S& x) { return scalar_ops<S>::is_zero(x, tol); };
    bool diagonal = zero(L(1, 2)) && zero(L(2, 1)) && zero(L(1, 3)) && zero(L(3, 1)) &&
                    zero(L(2, 3)) && zero(L(3, 2));
    if (!diagonal) {
        if (eps[0] != eps[1] || eps[2] != -eps[1])
            throw std::invalid_argument("bracket_from_L: non-diagonal L requires eps1 = eps2 = -eps3");
        if (!zero(L(1, 3)) || !zero(L(3, 1)) || !zero(L(1, 2) - L(2, 1)) ||
            !zero(L(3, 2) - scalar_ops<S>::from_int(eps[1] * eps[2]) * L(2, 3)))
            throw std::invalid_argument("bracket_from_L: operator is not of the unified shape");
    }
    auto [frame, eta] = build_frame(3, {eps[0], eps[1], eps[2]});
    (void)eta;
    MetricLieAlgebra<S> alg{frame, Tensor3<S>(4)};
    // k_{a b c} = g(L_{v_a} v_b, v_c); fill the three defining rows and
    // complete by antisymmetry in (a,b).
    auto put = [&](int a, int b, int col, int e) {
        for (int c = 1; c <= 3; ++c) {
            S v = scalar_ops<S>::from_int(e * eps[c - 1]) * L(c, col);
            alg.k(a, b, c) = v;
            alg.k(b, a, c) = -v;
        }
    };
    put(1, 2, 3, eps[2]);
    put(2, 3, 1, eps[0]);
    put(3, 1, 2, eps[1]);
    return alg;
}

/// Parameters of the two non-unimodular bracket families. "degenerate" refers
/// to the restriction of the metric to the unimodular kernel.
template <class S>
struct NonUnimodularParams {
    bool degenerate = true;
    S lambda{}, mu{}, nu{}, rho{};
    std::array<int, 3> eps{1, 1, -1};
};

template <class S>
struct NonUnimodularAlgebra {
    MetricLieAlgebra<S> alg;
    std::array<std::array<S, 2>, 2> A;  // semi-direct product operator
};

template <class S>
NonUnimodularAlgebra<S> bracket_nonunimodular(const NonUnimodularParams<S>& p) {
    const auto& e = p.eps;
    NonUnimodularAlgebra<S> out;
    auto [frame, eta] = build_frame(3, {e[0], e[1], e[2]});
    (void)eta;
    out.alg = MetricLieAlgebra<S>{frame, Tensor3<S>(4)};
    auto& k = out.alg.k;
    auto E = [&](int a) { return scalar_ops<S>::from_int(e[a - 1]); };
    auto set_row = [&](int a, int b, const std::array<S, 3>& w) {
        for (int c = 1; c <= 3; ++c) {
            S v = E(c) * w[c - 1];  // k_{abc} = g(sum w_d v_d, v_c) = eps_c w_c
            k(a, b, c) = v;
            k(b, a, c) = -v;
        }
    };
    if (p.degenerate) {
        if (e[0] != e[1] || e[2] != -e[0])
            throw std::invalid_argument("bracket_nonunimodular: degenerate case requires eps1 = eps2 = -eps3");
        if (scalar_ops<S>::is_zero(p.lambda + p.rho, 0.0))
            throw std::invalid_argument("bracket_nonunimodular: lambda + rho must be non-zero");
        S e1 = E(1);
        set_row(1, 2, {e1 * p.lambda, e1 * p.mu, e1 * p.mu});
        set_row(2, 3, {-e1 * p.nu, -e1 * p.rho, -e1 * p.rho});
        set_row(3, 1, {e1 * p.lambda, e1 * p.mu, e1 * p.mu});
        S me1 = -e1;
        out.A = {{{me1 * p.lambda, me1 * p.nu / scalar_ops<S>::from_int(2)},
                  {me1 * (p.mu + p.mu), me1 * p.rho}}};
    } else {
        S tr = E(1) * p.lambda + E(3) * p.rho;
        if (scalar_ops<S>::is_zero(tr, 0.0))
            throw std::invalid_argument("bracket_nonunimodular: tr ad_{v2} = eps1 lambda + eps3 rho must be non-zero");
        set_row(1, 3, {S{}, S{}, S{}});
        set_row(2, 1, {E(1) * p.lambda, S{}, E(3) * p.mu});
        set_row(2, 3, {E(1) * p.nu, S{}, E(3) * p.rho});
        out.A = {{{E(1) * p.lambda, E(1) * p.nu}, {E(3) * p.mu, E(3) * p.rho}}};
    }
    return out;
}

/// Recovers L from the brackets of a 3-dimensional metric Lie algebra, for
/// the orientation vol = v1* ^ v2* ^ v3* (flip with orientation = -1).
template <class S>
OperatorL<S> extract_L(const MetricLieAlgebra<S>& alg, int orientation = 1) {
    if (alg.n() != 3) throw std::invalid_argument("extract_L: requires n = 3");
    if (orientation != 1 && orientation != -1)
        throw std::invalid_argument("extract_L: orientation must be +-1");
    OperatorL<S> L;
    const auto& e = alg.frame.epsilon;
    auto sgn = [&](int a, int b) { return scalar_ops<S>::from_int(orientation * e[a] * e[b]); };
    for (int b = 1; b <= 3; ++b) {
        L(b, 3) = sgn(3, b) * alg.k(1, 2, b);
        L(b, 1) = sgn(1, b) * alg.k(2, 3, b);
        L(b, 2) = sgn(2, b) * alg.k(3, 1, b);
    }
    return L;
}

/// g-symmetry of L (equivalent to unimodularity for n = 3):
/// eps_b L_ba = eps_a L_ab.
template <class S>
bool l_symmetric(const OperatorL<S>& L, const std::array<int, 3>& eps, double tol) {
    for (int a = 1; a <= 3; ++a)
        for (int b = a + 1; b <= 3; ++b) {
            S lhs = scalar_ops<S>::from_int(eps[b - 1]) * L(b, a);
            S rhs = scalar_ops<S>::from_int(eps[a - 1]) * L(a, b);
            if (!scalar_ops<S>::is_zero(lhs - rhs, tol)) return false;
        }
    return true;
}

enum class LTag { L1, L2, L3, L5, General };

struct CanonicalTag {
    LTag tag = LTag::General;
    int eta = 0;                       // for L3
    double alpha = 0, beta = 0, gamma = 0;  // family parameters (as applicable)
};

/// Exact shape matching against the four canonical families; no normal-form
/// reduction is attempted.
inline CanonicalTag canonical_tag(const OperatorL<double>& L, double tol = 1e-9) {
    auto z = [&](double x) { return std::abs(x) <= tol; };
    CanonicalTag t;
    if (z(L(1, 2)) && z(L(2, 1)) && z(L(1, 3)) && z(L(3, 1)) && z(L(2, 3)) && z(L(3, 2))) {
        t.tag = LTag::L1;
        t.alpha = L(1, 1);
        t.beta = L(2, 2);
        t.gamma = L(3, 3);
        return t;
    }
    if (z(L(1, 2)) && z(L(2, 1)) && z(L(1, 3)) && z(L(3, 1))) {
        if (z(L(2, 2) - L(3, 3)) && z(L(2, 3) + L(3, 2)) && !z(L(3, 2))) {
            t.tag = LTag::L2;
            t.alpha = L(2, 2);
            t.beta = L(3, 2);
            t.gamma = L(1, 1);
            return t;
        }
        if (z(L(2, 3) + L(3, 2)) && z(std::abs(L(2, 3)) - 0.5) &&
            z((L(2, 2) - L(3, 3)) - 2 * L(2, 3))) {
            t.tag = LTag::L3;
            t.eta = L(2, 3) > 0 ? 1 : -1;
            t.alpha = L(2, 2) - t.eta * 0.5;
            t.beta = L(1, 1);
            return t;
        }
    }
    const double r = 1.0 / std::sqrt(2.0);
    if (z(L(1, 2) - r) && z(L(2, 1) - r) && z(L(2, 3) - r) && z(L(3, 2) + r) && z(L(1, 3)) &&
        z(L(3, 1)) && z(L(1, 1) - L(2, 2)) && z(L(2, 2) - L(3, 3))) {
        t.tag = LTag::L5;
        t.alpha = L(1, 1);
        return t;
    }
    return t;
}

/// Twisting data of the isomorphic Courant algebroid in which the given
/// generalized metric is standard: H~ = H - db - (2F + dA) ^ A, F~ = F + dA.
template <class S>
std::pair<KForm<S>, KForm<S>> gauge_reduce(const MetricLieAlgebra<S>& alg, const KForm<S>& H,
                                           const KForm<S>& F, const KForm<S>& b,
                                           const KForm<S>& A) {
    const int n = alg.n();
    KForm<S> dA = ce_differential(A, alg);
    KForm<S> db = ce_differential(b, alg);
    KForm<S> twoFdA(n, 2);
    KForm<S> Ft(n, 2);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            S f = F.get({i, j});
            S da = dA.get({i, j});
            twoFdA.set({i, j}, f + f + da);
            Ft.set({i, j}, f + da);
        }
    KForm<S> corr = wedge(twoFdA, A);
    KForm<S> Ht(n, 3);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                Ht.set({i, j, k}, H.get({i, j, k}) - db.get({i, j, k}) - corr.get({i, j, k}));
    return {Ht, Ft};
}

}  // namespace oge
