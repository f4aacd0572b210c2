#pragma once

#include <vector>

#include "oge/forms.hpp"
#include "oge/frame.hpp"
#include "oge/scalar.hpp"
#include "oge/tensor.hpp"

namespace oge {

/// Metric Lie algebra data in a g-orthonormal basis: k_abc = g(L_{v_a} v_b, v_c),
/// antisymmetric in (a,b). Indices 1..n; slot 0 of the storage is unused.
template <class S>
struct MetricLieAlgebra {
    FrameSignature frame;
    Tensor3<S> k;

    int n() const { return frame.n; }
};

/// Left-invariant twisting forms of the Courant algebroid: H (3-form) and
/// F (2-form), by frame components.
template <class S>
struct TwistingData {
    KForm<S> H;  // degree 3
    KForm<S> F;  // degree 2

    S Hc(int a, int b, int c) const { return H.get({a, b, c}); }
    S Fc(int a, int b) const { return F.get({a, b}); }
};

template <class S>
using Divergence = std::vector<S>;  // delta_A, A = 0..2n

/// Bundled input for the Einstein residual: algebra, twist and divergence.
template <class S>
struct Scene {
    MetricLieAlgebra<S> alg;
    TwistingData<S> twist;
    Divergence<S> delta;

    int n() const { return alg.frame.n; }
};

/// Bracket in the orthonormal basis: [v_a, v_b] = sum_c eps_c k_abc v_c.
template <class S>
S bracket_coef(const MetricLieAlgebra<S>& alg, int a, int b, int c) {
    S v = alg.k(a, b, c);
    return alg.frame.epsilon[c] < 0 ? -v : v;
}

/// Max-abs violation of the Jacobi identity
/// sum_{cyc(a,b,c)} sum_e eps_e k_abe k_ecd over all (a,b,c,d).
template <class S>
double jacobi_violation(const MetricLieAlgebra<S>& alg) {
    const int n = alg.n();
    double worst = 0;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            for (int c = 1; c <= n; ++c)
                for (int d = 1; d <= n; ++d) {
                    S acc{};
                    const int idx[3][2] = {{a, b}, {b, c}, {c, a}};
                    const int last[3] = {c, a, b};
                    for (int t = 0; t < 3; ++t)
                        for (int e = 1; e <= n; ++e) {
                            S term = alg.k(idx[t][0], idx[t][1], e) * alg.k(e, last[t], d);
                            acc = acc + (alg.frame.epsilon[e] < 0 ? -term : term);
                        }
                    worst = std::max(worst, std::abs(scalar_ops<S>::value(acc)));
                }
    return worst;
}

/// Left-invariant exterior differential: for a k-form,
/// (dw)(x_0..x_k) = sum_{r<s} (-1)^{r+s} w([x_r,x_s], x_0,..^r..^s..,x_k).
template <class S>
KForm<S> ce_differential(const KForm<S>& w, const MetricLieAlgebra<S>& alg) {
    const int n = alg.n();
    const int p = w.degree();
    KForm<S> out(n, p + 1);
    if (p + 1 > n) return out;
    // iterate strictly increasing (p+1)-tuples
    std::vector<int> c(p + 1);
    for (int i = 0; i <= p; ++i) c[i] = i + 1;
    while (true) {
        S val{};
        for (int r = 0; r <= p; ++r)
            for (int s = r + 1; s <= p; ++s) {
                std::vector<int> rest;
                rest.reserve(p);
                for (int t = 0; t <= p; ++t)
                    if (t != r && t != s) rest.push_back(c[t]);
                int sg = ((r + s) % 2) ? -1 : 1;
                for (int e = 1; e <= n; ++e) {
                    S kc = bracket_coef(alg, c[r], c[s], e);
                    if (scalar_ops<S>::is_zero(kc, 0.0)) continue;
                    std::vector<int> args;
                    args.reserve(p);
                    args.push_back(e);
                    for (int x : rest) args.push_back(x);
                    S term = kc * w.get(args);
                    val = val + (sg > 0 ? term : -term);
                }
            }
        out.set(c, val);
        int k = p;
        while (k >= 0 && c[k] == n - (p - k)) --k;
        if (k < 0) break;
        ++c[k];
        for (int j = k + 1; j <= p; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

/// dF closedness check; for n >= 4 the pair must additionally satisfy
/// dH + F^F = 0.
template <class S>
bool twist_admissible(const MetricLieAlgebra<S>& alg, const TwistingData<S>& tw, double tol) {
    KForm<S> dF = ce_differential(tw.F, alg);
    if (!dF.zero(tol)) return false;
    if (alg.n() >= 4) {
        KForm<S> dH = ce_differential(tw.H, alg);
        KForm<S> FF = wedge(tw.F, tw.F);
        const int n = alg.n();
        std::vector<int> c = {1, 2, 3, 4};
        while (true) {
            S s = dH.get(c) + FF.get(c);
            if (!scalar_ops<S>::is_zero(s, tol)) return false;
            int k = 3;
            while (k >= 0 && c[k] == n - (3 - k)) --k;
            if (k < 0) break;
            ++c[k];
            for (int j = k + 1; j <= 3; ++j) c[j] = c[j - 1] + 1;
        }
    }
    return true;
}

}  // namespace oge
