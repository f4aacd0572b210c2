#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "oge/scalar.hpp"
#include "oge/tensor.hpp"

namespace oge {

template <class S> struct MetricLieAlgebra;

/// Left-invariant k-form on the Lie algebra, k <= 4, stored densely over
/// 1-based frame indices with full antisymmetry maintained on write.
template <class S>
class KForm {
public:
    KForm() = default;
    KForm(int n, int degree) : n_(n), deg_(degree) {
        size_t sz = 1;
        for (int i = 0; i < deg_; ++i) sz *= size_t(n_ + 1);
        v_.assign(sz, S());
    }

    int n() const { return n_; }
    int degree() const { return deg_; }

    const S& get(const std::vector<int>& idx) const { return v_[offset(idx)]; }

    /// Sets the component at idx and every permutation of it (signed).
    void set(const std::vector<int>& idx, const S& val) {
        std::vector<int> p(idx);
        std::vector<int> order(deg_);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end());
        // iterate permutations of positions
        std::vector<int> perm(order);
        do {
            int sg = perm_sign(perm);
            for (int i = 0; i < deg_; ++i) p[i] = idx[perm[i]];
            v_[offset(p)] = sg > 0 ? val : -val;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    bool zero(double tol) const {
        for (const auto& x : v_)
            if (!scalar_ops<S>::is_zero(x, tol)) return false;
        return true;
    }

    double max_abs() const {
        double m = 0;
        for (const auto& x : v_) m = std::max(m, std::abs(scalar_ops<S>::value(x)));
        return m;
    }

private:
    static int perm_sign(const std::vector<int>& p) {
        int sg = 1;
        for (size_t i = 0; i < p.size(); ++i)
            for (size_t j = i + 1; j < p.size(); ++j)
                if (p[i] > p[j]) sg = -sg;
        return sg;
    }
    size_t offset(const std::vector<int>& idx) const {
        size_t o = 0;
        for (int i = 0; i < deg_; ++i) {
            if (idx[i] < 1 || idx[i] > n_) throw std::out_of_range("KForm index");
            o = o * size_t(n_ + 1) + size_t(idx[i]);
        }
        return o;
    }

    int n_ = 0, deg_ = 0;
    std::vector<S> v_;
};

/// Wedge product via shuffle expansion; result degree p+q (<= 4 here).
template <class S>
KForm<S> wedge(const KForm<S>& alpha, const KForm<S>& beta) {
    int p = alpha.degree(), q = beta.degree(), n = alpha.n();
    KForm<S> out(n, p + q);
    if (p + q > n) return out;  // identically zero
    std::vector<int> idx(p + q, 1);
    // iterate strictly increasing tuples idx[0] < ... < idx[p+q-1]
    std::vector<int> c(p + q);
    std::iota(c.begin(), c.end(), 1);
    while (true) {
        // sum over (p,q)-shuffles of c; sel marks the slots fed to alpha
        S val{};
        std::vector<int> sel(p + q, 0);
        std::fill(sel.begin(), sel.begin() + p, 1);
        std::sort(sel.begin(), sel.end());
        do {
            std::vector<int> ia, ib;
            for (int i = 0; i < p + q; ++i) (sel[i] ? ia : ib).push_back(c[i]);
            // shuffle sign: inversions between the alpha block and beta block
            int sg = 1;
            for (int i = 0; i < p + q; ++i)
                if (!sel[i])
                    for (int j = i + 1; j < p + q; ++j)
                        if (sel[j]) sg = -sg;
            S term = alpha.get(ia) * beta.get(ib);
            val = val + (sg > 0 ? term : -term);
        } while (std::next_permutation(sel.begin(), sel.end()));
        out.set(c, val);
        // advance tuple
        int k = p + q - 1;
        while (k >= 0 && c[k] == n - (p + q - 1 - k)) --k;
        if (k < 0) break;
        ++c[k];
        for (int j = k + 1; j < p + q; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

}  // namespace oge
