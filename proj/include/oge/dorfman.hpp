#pragma once

#include <optional>

#include "oge/types.hpp"

namespace oge {

/// Fully skew Dorfman coefficient tensor B_ABC of E_{H,F} in the frame
/// basis, indices 0..2n.
template <class S>
struct DorfmanTensor {
    FrameSignature frame;
    Tensor3<S> B;
};

/// Builds B_ABC from Lie-algebra, H and F data. The five independent blocks
/// are filled from their defining formulas; every remaining entry comes from
/// the canonical block by permutation-sign extension.
template <class S>
DorfmanTensor<S> dorfman_coefficients(const MetricLieAlgebra<S>& alg, const TwistingData<S>& tw) {
    const int n = alg.n();
    if (tw.H.n() != n || tw.F.n() != n)
        throw std::invalid_argument("dorfman_coefficients: twist dimension mismatch");
    const auto& k = alg.k;
    auto half = scalar_ops<S>::frac(1, 2);

    DorfmanTensor<S> D;
    D.frame = alg.frame;
    D.B = Tensor3<S>(2 * n + 1);
    auto& B = D.B;

    // plus-plus-plus sector, indices 0..n
    for (int a = 0; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c) {
                S v;
                if (a >= 1)
                    v = half * (k(a, b, c) + k(b, c, a) + k(c, a, b) - tw.Hc(a, b, c));
                else
                    v = tw.Fc(b, c);  // B_{0bc} = F_bc
                set_skew(B, a, b, c, v);
            }

    // minus-minus-minus sector, indices n+1..2n
    for (int i = n + 1; i <= 2 * n; ++i)
        for (int j = i + 1; j <= 2 * n; ++j)
            for (int kk = j + 1; kk <= 2 * n; ++kk) {
                int ip = i - n, jp = j - n, kp = kk - n;
                S v = -half * (k(ip, jp, kp) + k(jp, kp, ip) + k(kp, ip, jp) + tw.Hc(ip, jp, kp));
                set_skew(B, i, j, kk, v);
            }

    // one plus, two minus: canonical order (a, j, k) with j < k
    for (int a = 0; a <= n; ++a)
        for (int j = n + 1; j <= 2 * n; ++j)
            for (int kk = j + 1; kk <= 2 * n; ++kk) {
                int jp = j - n, kp = kk - n;
                S v;
                if (a >= 1)
                    v = half * (k(a, kp, jp) + k(jp, kp, a) - k(a, jp, kp) - tw.Hc(a, jp, kp));
                else
                    v = tw.Fc(jp, kp);  // B_{0jk} = F_{j'k'}
                set_skew(B, a, j, kk, v);
            }

    // one minus, two plus: canonical order (i, b, c) with b < c
    for (int i = n + 1; i <= 2 * n; ++i)
        for (int b = 0; b <= n; ++b)
            for (int c = b + 1; c <= n; ++c) {
                int ip = i - n;
                S v;
                if (b >= 1)
                    v = half * (k(c, ip, b) + k(c, b, ip) + k(ip, b, c) - tw.Hc(ip, b, c));
                else
                    v = -tw.Fc(ip, c);  // B_{i0c} = -B_{ic0} = -F_{i'c}
                set_skew(B, i, b, c, v);
            }

    return D;
}

/// True iff B is fully antisymmetric within tolerance; otherwise reports the
/// first violating index triple.
template <class S>
std::optional<std::array<int, 3>> skew_violation(const Tensor3<S>& B, double tol) {
    for (int A = 0; A < B.d; ++A)
        for (int Bi = 0; Bi < B.d; ++Bi)
            for (int C = 0; C < B.d; ++C) {
                if (!scalar_ops<S>::is_zero(B(A, Bi, C) + B(Bi, A, C), tol) ||
                    !scalar_ops<S>::is_zero(B(A, Bi, C) + B(A, C, Bi), tol))
                    return std::array<int, 3>{A, Bi, C};
            }
    return std::nullopt;
}

template <class S>
bool check_skew(const Tensor3<S>& B, double tol = 0.0) {
    return !skew_violation(B, tol).has_value();
}

}  // namespace oge
