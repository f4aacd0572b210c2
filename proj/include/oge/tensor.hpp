#pragma once

#include <array>
#include <vector>

namespace oge {

/// Dense rank-2 array with one common axis length.
template <class S>
struct Mat {
    int d = 0;
    std::vector<S> v;
    Mat() = default;
    explicit Mat(int dim) : d(dim), v(size_t(dim) * dim) {}
    S& operator()(int i, int j) { return v[size_t(i) * d + j]; }
    const S& operator()(int i, int j) const { return v[size_t(i) * d + j]; }
};

/// Dense rank-3 array.
template <class S>
struct Tensor3 {
    int d = 0;
    std::vector<S> v;
    Tensor3() = default;
    explicit Tensor3(int dim) : d(dim), v(size_t(dim) * dim * dim) {}
    S& operator()(int i, int j, int k) { return v[(size_t(i) * d + j) * d + k]; }
    const S& operator()(int i, int j, int k) const { return v[(size_t(i) * d + j) * d + k]; }
    void fill_zero() { v.assign(v.size(), S()); }
};

/// Dense rank-4 array.
template <class S>
struct Tensor4 {
    int d = 0;
    std::vector<S> v;
    Tensor4() = default;
    explicit Tensor4(int dim) : d(dim), v(size_t(dim) * dim * dim * dim) {}
    S& operator()(int i, int j, int k, int l) {
        return v[((size_t(i) * d + j) * d + k) * d + l];
    }
    const S& operator()(int i, int j, int k, int l) const {
        return v[((size_t(i) * d + j) * d + k) * d + l];
    }
};

/// Writes value v at (A,B,C) and extends over all six index permutations
/// with the permutation sign.
template <class S>
void set_skew(Tensor3<S>& t, int A, int B, int C, const S& v) {
    t(A, B, C) = v;
    t(B, C, A) = v;
    t(C, A, B) = v;
    t(B, A, C) = -v;
    t(A, C, B) = -v;
    t(C, B, A) = -v;
}

}  // namespace oge
