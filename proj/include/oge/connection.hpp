#pragma once

#include "oge/dorfman.hpp"

namespace oge {

/// Left-invariant generalized connection in lowered form:
/// w(A,B,C) = <D_{e_A} e_B, e_C>. Raised coefficients are w_AB^C = w_ABC eps_C.
template <class S>
struct Connection {
    FrameSignature frame;
    Tensor3<S> w;

    S raised(int A, int B, int C) const {
        return frame.eps(C) < 0 ? -w(A, B, C) : w(A, B, C);
    }
};

template <class S>
Connection<S> operator+(const Connection<S>& x, const Connection<S>& y) {
    Connection<S> r = x;
    for (size_t i = 0; i < r.w.v.size(); ++i) r.w.v[i] = r.w.v[i] + y.w.v[i];
    return r;
}

/// The canonical divergence-free Levi-Civita generalized connection D^0:
/// w_abc = B_abc/3, w_ijk = B_ijk/3, w_ibc = B_ibc, w_ajk = B_ajk and the
/// mixed blocks vanish (a,b,c run over 0..n, i,j,k over n+1..2n).
template <class S>
Connection<S> d0_connection(const DorfmanTensor<S>& D) {
    const auto& f = D.frame;
    const int n = f.n;
    auto third = scalar_ops<S>::frac(1, 3);
    Connection<S> C{f, Tensor3<S>(f.dim())};
    for (int A = 0; A < f.dim(); ++A)
        for (int B = 0; B < f.dim(); ++B)
            for (int Cc = 0; Cc < f.dim(); ++Cc) {
                bool pa = f.is_plus(A), pb = f.is_plus(B), pc = f.is_plus(Cc);
                if (pb != pc) continue;  // preserves E_-
                if (pa == pb)
                    C.w(A, B, Cc) = third * D.B(A, B, Cc);
                else
                    C.w(A, B, Cc) = D.B(A, B, Cc);
            }
    return C;
}

/// alt of a (Sym^2 side*)x(side*) tensor: <alt(sigma)_u v, w> =
/// sigma(u,v,w) - sigma(u,w,v). sigma is given densely over frame indices but
/// must be supported on one side and symmetric in its first two slots.
template <class S>
Connection<S> alt_increment(const Tensor3<S>& sigma, bool plus_side, const FrameSignature& f,
                            double tol = 0.0) {
    const int d = f.dim();
    if (sigma.d != d) throw std::invalid_argument("alt_increment: shape mismatch");
    for (int A = 0; A < d; ++A)
        for (int B = 0; B < d; ++B)
            for (int C = 0; C < d; ++C) {
                bool on_side = (f.is_plus(A) == plus_side) && (f.is_plus(B) == plus_side) &&
                               (f.is_plus(C) == plus_side);
                if (!on_side && !scalar_ops<S>::is_zero(sigma(A, B, C), tol))
                    throw std::invalid_argument("alt_increment: sigma not supported on the chosen side");
                if (!scalar_ops<S>::is_zero(sigma(A, B, C) - sigma(B, A, C), tol))
                    throw std::invalid_argument("alt_increment: sigma not symmetric in first two slots");
            }
    Connection<S> inc{f, Tensor3<S>(d)};
    for (int A = 0; A < d; ++A) {
        if (f.is_plus(A) != plus_side) continue;
        for (int B = 0; B < d; ++B) {
            if (f.is_plus(B) != plus_side) continue;
            for (int C = 0; C < d; ++C) {
                if (f.is_plus(C) != plus_side) continue;
                inc.w(A, B, C) = sigma(A, B, C) - sigma(A, C, B);
            }
        }
    }
    return inc;
}

/// The correction S of D = D^0 + S realizing a prescribed divergence: alt of
/// four squared-covector terms built on e^0, e^1, e^{n+1}, e^{n+2}.
template <class S>
Connection<S> divergence_correction(const Divergence<S>& delta, const FrameSignature& f) {
    const int n = f.n;
    if (n < 2) throw std::invalid_argument("divergence_correction: requires n >= 2");
    if (int(delta.size()) != f.dim())
        throw std::invalid_argument("divergence_correction: delta length mismatch");

    Tensor3<S> sig_p(f.dim()), sig_m(f.dim());
    auto e1 = scalar_ops<S>::from_int(f.eps(1));
    auto en2 = scalar_ops<S>::from_int(f.eps(n + 2));
    auto en1 = scalar_ops<S>::from_int(f.eps(n + 1));
    // delta_0 eps_1 (e^1)^2 x e^0  and  sum_{A=1..n} delta_A (e^0)^2 x e^A
    sig_p(1, 1, 0) = sig_p(1, 1, 0) + e1 * delta[0];
    for (int A = 1; A <= n; ++A) sig_p(0, 0, A) = sig_p(0, 0, A) + delta[A];
    // delta_{n+1} eps_{n+2} (e^{n+2})^2 x e^{n+1}  and
    // sum_{A=n+2..2n} eps_{n+1} delta_A (e^{n+1})^2 x e^A
    sig_m(n + 2, n + 2, n + 1) = sig_m(n + 2, n + 2, n + 1) + en2 * delta[n + 1];
    for (int A = n + 2; A <= 2 * n; ++A)
        sig_m(n + 1, n + 1, A) = sig_m(n + 1, n + 1, A) + en1 * delta[A];

    Connection<S> Sp = alt_increment(sig_p, true, f);
    Connection<S> Sm = alt_increment(sig_m, false, f);
    Connection<S> out = Sp + Sm;
    for (auto& x : out.w.v) x = -x;
    return out;
}

/// T_ABC = w_ABC - w_BAC - B_ABC + w_CAB (fully lowered); vanishes exactly
/// for Levi-Civita connections.
template <class S>
Tensor3<S> torsion(const Connection<S>& D, const DorfmanTensor<S>& Dorf) {
    const int d = D.frame.dim();
    Tensor3<S> T(d);
    for (int A = 0; A < d; ++A)
        for (int B = 0; B < d; ++B)
            for (int C = 0; C < d; ++C)
                T(A, B, C) = D.w(A, B, C) - D.w(B, A, C) - Dorf.B(A, B, C) + D.w(C, A, B);
    return T;
}

/// (delta^D)_B = sum_A w_AB^A.
template <class S>
Divergence<S> divergence_of(const Connection<S>& D) {
    const int d = D.frame.dim();
    Divergence<S> out(d, S());
    for (int B = 0; B < d; ++B)
        for (int A = 0; A < d; ++A)
            out[B] = out[B] + D.raised(A, B, A);
    return out;
}

/// Metric compatibility (so-valued in the last two slots) and preservation of
/// E_- (mixed blocks vanish).
template <class S>
bool connection_well_formed(const Connection<S>& D, double tol) {
    const int d = D.frame.dim();
    for (int A = 0; A < d; ++A)
        for (int B = 0; B < d; ++B)
            for (int C = 0; C < d; ++C) {
                if (!scalar_ops<S>::is_zero(D.w(A, B, C) + D.w(A, C, B), tol)) return false;
                if (D.frame.is_plus(B) != D.frame.is_plus(C) &&
                    !scalar_ops<S>::is_zero(D.w(A, B, C), tol))
                    return false;
            }
    return true;
}

}  // namespace oge
