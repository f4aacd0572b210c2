#pragma once

#include "oge/curvature.hpp"

namespace oge {

/// Structured residual of the odd generalized Einstein system, grouped by the
/// four relation families so a failure localizes to a specific relation.
/// G1: n x n (rows i = n+1..2n, cols a = 1..n); G2, G3: length n; G4: n x n.
template <class S>
struct EinsteinResidual {
    int n = 0;
    std::vector<S> G1, G4;  // [i-n-1][a-1]
    std::vector<S> G2;      // [i-n-1]
    std::vector<S> G3;      // [a-1]

    explicit EinsteinResidual(int dim)
        : n(dim), G1(size_t(dim) * dim), G4(size_t(dim) * dim), G2(dim), G3(dim) {}

    S& g1(int i, int a) { return G1[size_t(i - n - 1) * n + (a - 1)]; }
    const S& g1(int i, int a) const { return G1[size_t(i - n - 1) * n + (a - 1)]; }
    S& g4(int i, int a) { return G4[size_t(i - n - 1) * n + (a - 1)]; }
    const S& g4(int i, int a) const { return G4[size_t(i - n - 1) * n + (a - 1)]; }
    S& g2(int i) { return G2[i - n - 1]; }
    S& g3(int a) { return G3[a - 1]; }
    const S& g2(int i) const { return G2[i - n - 1]; }
    const S& g3(int a) const { return G3[a - 1]; }

    double norm() const {
        double m = 0;
        for (auto* grp : {&G1, &G2, &G3, &G4})
            for (const auto& x : *grp) m = std::max(m, std::abs(scalar_ops<S>::value(x)));
        return m;
    }

    bool exactly_zero() const {
        for (auto* grp : {&G1, &G2, &G3, &G4})
            for (const auto& x : *grp)
                if (!scalar_ops<S>::is_zero(x, 0.0)) return false;
        return true;
    }

    /// Flattened order G1 row-major, then G2, G3, G4 (2n^2 + 2n entries).
    std::vector<S> flatten() const {
        std::vector<S> out;
        out.reserve(G1.size() + G2.size() + G3.size() + G4.size());
        for (auto* grp : {&G1, &G2, &G3, &G4})
            for (const auto& x : *grp) out.push_back(x);
        return out;
    }
};

template <class S>
void validate_scene(const Scene<S>& sc, double tol = 1e-9) {
    const int n = sc.n();
    if (sc.twist.H.n() != n || sc.twist.F.n() != n || int(sc.delta.size()) != 2 * n + 1)
        throw std::invalid_argument("scene: inconsistent dimensions across parts");
    KForm<S> dF = ce_differential(sc.twist.F, sc.alg);
    if (!dF.zero(tol))
        throw std::invalid_argument("scene: dF != 0 (closedness constraint on the twisting 2-form violated)");
    if (n >= 4 && !twist_admissible(sc.alg, sc.twist, tol))
        throw std::invalid_argument("scene: dH + F^F != 0");
}

/// Evaluates the four relation groups of the Einstein system. The scene is
/// rejected before evaluation if dF != 0.
template <class S>
EinsteinResidual<S> einstein_residual(const Scene<S>& sc, double tol = 1e-9) {
    validate_scene(sc, tol);
    const int n = sc.n();
    const auto& f = sc.alg.frame;
    DorfmanTensor<S> D = dorfman_coefficients(sc.alg, sc.twist);
    const auto& B = D.B;
    const auto& F = sc.twist;
    const auto& dl = sc.delta;

    EinsteinResidual<S> r(n);
    auto eps = [&](int A) { return scalar_ops<S>::from_int(f.eps(A)); };

    for (int i = n + 1; i <= 2 * n; ++i) {
        int ip = i - n;
        for (int a = 1; a <= n; ++a) {
            // sum_b (B_bi^j B_aj^b + B_ia^b delta_b) + F_{i'a} delta_0 - sum_b eps_b F_{i'b} F_{ab}
            S acc{};
            for (int b = 1; b <= n; ++b) {
                for (int j = n + 1; j <= 2 * n; ++j) {
                    S t = B(b, i, j) * B(a, j, b);
                    int sg = f.eps(j) * f.eps(b);
                    acc = acc + (sg < 0 ? -t : t);
                }
                S t2 = B(i, a, b) * dl[b];
                acc = acc + (f.eps(b) < 0 ? -t2 : t2);
                acc = acc - eps(b) * F.Fc(ip, b) * F.Fc(a, b);
            }
            acc = acc + F.Fc(ip, a) * dl[0];
            r.g1(i, a) = acc;
        }
        {
            // sum_b eps_b (eps_{j'} F_{j'b} B_{bij} + F_{i'b} delta_b)
            S acc{};
            for (int b = 1; b <= n; ++b) {
                for (int j = n + 1; j <= 2 * n; ++j) {
                    S t = F.Fc(j - n, b) * B(b, i, j);
                    int sg = f.epsilon[j - n] * f.epsilon[b];
                    acc = acc + (sg < 0 ? -t : t);
                }
                acc = acc + eps(b) * F.Fc(ip, b) * dl[b];
            }
            r.g2(i) = acc;
        }
        for (int a = 1; a <= n; ++a) {
            // sum_b eps_b (B_{iab} delta_b - B_{ia,b+n} delta_{b+n}) + delta_0 F_{i'a}
            S acc{};
            for (int b = 1; b <= n; ++b) {
                S t = B(i, a, b) * dl[b] - B(i, a, b + n) * dl[b + n];
                acc = acc + (f.epsilon[b] < 0 ? -t : t);
            }
            acc = acc + dl[0] * F.Fc(ip, a);
            r.g4(i, a) = acc;
        }
    }
    for (int a = 1; a <= n; ++a) {
        // sum_b F_ab eps_b (delta_b - delta_{b+n})
        S acc{};
        for (int b = 1; b <= n; ++b) {
            S t = F.Fc(a, b) * (dl[b] - dl[b + n]);
            acc = acc + (f.epsilon[b] < 0 ? -t : t);
        }
        r.g3(a) = acc;
    }
    return r;
}

/// True iff the residual system vanishes within tol and, as a double check,
/// all Ricci components from the closed form vanish within tol as well.
template <class S>
bool is_einstein(const Scene<S>& sc, double tol) {
    if (tol < 0) throw std::invalid_argument("is_einstein: tol must be nonnegative");
    EinsteinResidual<S> r = einstein_residual(sc);
    bool res_zero = scalar_ops<S>::exact ? r.exactly_zero() : r.norm() <= tol;
    if (!res_zero) return false;
    DorfmanTensor<S> D = dorfman_coefficients(sc.alg, sc.twist);
    RicciComponents<S> ric = ricci_closed_form(D, sc.twist, sc.delta);
    bool ric_zero = true;
    if (scalar_ops<S>::exact) {
        for (const auto& x : ric.plus) ric_zero = ric_zero && scalar_ops<S>::is_zero(x, 0.0);
        for (const auto& x : ric.minus) ric_zero = ric_zero && scalar_ops<S>::is_zero(x, 0.0);
    } else {
        ric_zero = ric.max_abs() <= tol;
    }
    return ric_zero;
}

}  // namespace oge
