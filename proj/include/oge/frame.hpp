#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oge/tensor.hpp"

namespace oge {

/// Index conventions on E~ = g + g* + R. Frame indices A run 0..2n with
/// A = 0 the R-summand, 1..n the "plus" tangent slots and n+1..2n the
/// "minus" slots; i' = i - n maps a minus index back to its tangent label.
struct FrameSignature {
    int n = 0;
    std::vector<int> epsilon;  // epsilon[a], a = 1..n (slot 0 unused)

    int dim() const { return 2 * n + 1; }

    /// eps_A: eps_0 = 1, eps_A = eps_a for 1 <= A <= n, eps_A = -eps_{A-n} above.
    int eps(int A) const {
        if (A == 0) return 1;
        if (A <= n) return epsilon[A];
        return -epsilon[A - n];
    }

    bool is_plus(int A) const { return A <= n; }
    int prime(int i) const { return i - n; }
};

/// The diagonal scalar product eta = diag(1, eps, -eps); coincides with its
/// own inverse.
struct ScalarProduct {
    std::vector<int> eta;  // diagonal entries, size 2n+1
    int operator()(int A) const { return eta[A]; }
    int dim() const { return int(eta.size()); }
};

inline std::pair<FrameSignature, ScalarProduct> build_frame(int n, const std::vector<int>& epsilon) {
    if (n < 2)
        throw std::invalid_argument("build_frame: dimension must be >= 2 (got " + std::to_string(n) + ")");
    if (int(epsilon.size()) != n)
        throw std::invalid_argument("build_frame: epsilon must have length n");
    FrameSignature f;
    f.n = n;
    f.epsilon.assign(n + 1, 0);
    for (int a = 1; a <= n; ++a) {
        int e = epsilon[a - 1];
        if (e != 1 && e != -1)
            throw std::invalid_argument("build_frame: epsilon[" + std::to_string(a) + "] must be +1 or -1");
        f.epsilon[a] = e;
    }
    ScalarProduct eta;
    eta.eta.resize(f.dim());
    for (int A = 0; A < f.dim(); ++A) eta.eta[A] = f.eps(A);
    return {f, eta};
}

/// B_AB^C = B_ABC * eps_C (eta is diagonal and self-inverse).
template <class S>
Tensor3<S> raise_index(const Tensor3<S>& B, const ScalarProduct& eta) {
    if (B.d != eta.dim())
        throw std::invalid_argument("raise_index: tensor/frame shape mismatch");
    Tensor3<S> R(B.d);
    for (int A = 0; A < B.d; ++A)
        for (int Bi = 0; Bi < B.d; ++Bi)
            for (int C = 0; C < B.d; ++C)
                R(A, Bi, C) = eta(C) < 0 ? -B(A, Bi, C) : B(A, Bi, C);
    return R;
}

}  // namespace oge
