#include "oge/atlas.hpp"

#include <algorithm>
#include <cmath>

namespace oge {

const std::vector<FamilyId>& all_families() {
    static const std::vector<FamilyId> ids = {
        FamilyId::DIAG, FamilyId::L3_1, FamilyId::L3_2, FamilyId::L3_3, FamilyId::L3_4,
        FamilyId::L5,   FamilyId::DEG_1, FamilyId::DEG_2, FamilyId::DEG_F0,
        FamilyId::ND_1A, FamilyId::ND_1B, FamilyId::ND_2, FamilyId::ND_3A, FamilyId::ND_3B,
        FamilyId::ND_3C, FamilyId::ND_4A, FamilyId::ND_4B, FamilyId::ND_5, FamilyId::ND_6,
        FamilyId::ND_7I, FamilyId::ND_7II};
    return ids;
}

std::string family_name(FamilyId id) {
    switch (id) {
        case FamilyId::DIAG: return "DIAG";
        case FamilyId::L3_1: return "L3_1";
        case FamilyId::L3_2: return "L3_2";
        case FamilyId::L3_3: return "L3_3";
        case FamilyId::L3_4: return "L3_4";
        case FamilyId::L5: return "L5";
        case FamilyId::DEG_1: return "DEG_1";
        case FamilyId::DEG_2: return "DEG_2";
        case FamilyId::DEG_F0: return "DEG_F0";
        case FamilyId::ND_1A: return "ND_1a";
        case FamilyId::ND_1B: return "ND_1b";
        case FamilyId::ND_2: return "ND_2";
        case FamilyId::ND_3A: return "ND_3a";
        case FamilyId::ND_3B: return "ND_3b";
        case FamilyId::ND_3C: return "ND_3c";
        case FamilyId::ND_4A: return "ND_4a";
        case FamilyId::ND_4B: return "ND_4b";
        case FamilyId::ND_5: return "ND_5";
        case FamilyId::ND_6: return "ND_6";
        case FamilyId::ND_7I: return "ND_7i";
        case FamilyId::ND_7II: return "ND_7ii";
    }
    return "?";
}

std::optional<FamilyId> family_from_name(const std::string& s) {
    std::string t;
    for (char c : s) t += char(std::toupper((unsigned char)c));
    for (FamilyId id : all_families()) {
        std::string u;
        for (char c : family_name(id)) u += char(std::toupper((unsigned char)c));
        if (u == t) return id;
    }
    return std::nullopt;
}

std::string to_string(const LieLabel& l) {
    char buf[64];
    switch (l.kind) {
        case LieLabel::Abelian: return "abelian";
        case LieLabel::Heis: return "heis";
        case LieLabel::E2: return "e(2)";
        case LieLabel::E11: return "e(1,1)";
        case LieLabel::So3: return "so(3)";
        case LieLabel::So21: return "so(2,1)";
        case LieLabel::Tau2R: return "tau2+R";
        case LieLabel::Tau3: return "tau3";
        case LieLabel::Tau3Lam:
            std::snprintf(buf, sizeof buf, "tau3,%g", l.lambda);
            return buf;
        case LieLabel::Tau3PrimeLam:
            std::snprintf(buf, sizeof buf, "tau3',%g", l.lambda);
            return buf;
    }
    return "?";
}

namespace {

// bracket coefficients c_{ab}^e = eps_e k_abe
double cc(const MetricLieAlgebra<double>& alg, int a, int b, int e) {
    return alg.frame.epsilon[e] * alg.k(a, b, e);
}

double alg_scale(const MetricLieAlgebra<double>& alg) {
    double s = 1;
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            for (int c = 1; c <= 3; ++c) s = std::max(s, std::abs(alg.k(a, b, c)));
    return s;
}

// rank of the 3x3 matrix whose rows are [v1,v2], [v1,v3], [v2,v3]
int derived_rank(const MetricLieAlgebra<double>& alg, double tol, double rows[3][3]) {
    int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
    double m[3][3];
    for (int r = 0; r < 3; ++r)
        for (int e = 1; e <= 3; ++e) {
            m[r][e - 1] = cc(alg, pairs[r][0], pairs[r][1], e);
            rows[r][e - 1] = m[r][e - 1];
        }
    double thresh = tol * alg_scale(alg);
    int rank = 0;
    for (int col = 0; col < 3 && rank < 3; ++col) {
        int piv = -1;
        double best = thresh;
        for (int r = rank; r < 3; ++r)
            if (std::abs(m[r][col]) > best) { best = std::abs(m[r][col]); piv = r; }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        for (int r = 0; r < 3; ++r) {
            if (r == rank) continue;
            double f = m[r][col] / m[rank][col];
            for (int c2 = 0; c2 < 3; ++c2) m[r][c2] -= f * m[rank][c2];
        }
        ++rank;
    }
    return rank;
}

void killing_form(const MetricLieAlgebra<double>& alg, double K[3][3]) {
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) {
            double s = 0;
            for (int c = 1; c <= 3; ++c)
                for (int e = 1; e <= 3; ++e) s += cc(alg, a, c, e) * cc(alg, b, e, c);
            K[a - 1][b - 1] = s;
        }
}

// eigenvalues of a symmetric 3x3 matrix by cyclic Jacobi rotations
void sym_eigenvalues(double a[3][3], double ev[3]) {
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
        if (off < 1e-14) break;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (int k = 0; k < 3; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
    }
    for (int i = 0; i < 3; ++i) ev[i] = a[i][i];
}

}  // namespace

bool is_unimodular(const MetricLieAlgebra<double>& alg, double tol) {
    double s = alg_scale(alg);
    for (int a = 1; a <= 3; ++a) {
        double tr = 0;
        for (int b = 1; b <= 3; ++b) tr += cc(alg, a, b, b);
        if (std::abs(tr) > tol * s) return false;
    }
    return true;
}

LieLabel identify_unimodular(const MetricLieAlgebra<double>& alg, double tol) {
    if (alg.n() != 3) throw std::invalid_argument("identify_unimodular: requires n = 3");
    if (!is_unimodular(alg, tol))
        throw std::invalid_argument("identify_unimodular: algebra is not unimodular");
    double rows[3][3];
    int dim = derived_rank(alg, tol, rows);
    if (dim == 0) return {LieLabel::Abelian, 0};
    if (dim == 1) return {LieLabel::Heis, 0};
    double K[3][3];
    killing_form(alg, K);
    if (dim == 3) {
        double ev[3];
        sym_eigenvalues(K, ev);
        bool neg = ev[0] < 0 && ev[1] < 0 && ev[2] < 0;
        return {neg ? LieLabel::So3 : LieLabel::So21, 0};
    }
    // dim == 2: [g,g] = Ker K; sign of the induced form on the quotient.
    // Take the basis vector farthest from the derived algebra.
    int best = 0;
    double best_res = -1;
    for (int a = 0; a < 3; ++a) {
        // residual of e_a against span(rows) via Gram-Schmidt
        double v[3] = {0, 0, 0};
        v[a] = 1;
        double r0[3] = {rows[0][0], rows[0][1], rows[0][2]};
        double r1[3] = {rows[1][0], rows[1][1], rows[1][2]};
        double r2[3] = {rows[2][0], rows[2][1], rows[2][2]};
        double* basis[3] = {r0, r1, r2};
        double ortho[3][3];
        int nb = 0;
        for (int i = 0; i < 3; ++i) {
            double w[3] = {basis[i][0], basis[i][1], basis[i][2]};
            for (int j = 0; j < nb; ++j) {
                double dot = w[0] * ortho[j][0] + w[1] * ortho[j][1] + w[2] * ortho[j][2];
                for (int t = 0; t < 3; ++t) w[t] -= dot * ortho[j][t];
            }
            double nn = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
            if (nn > 1e-9) {
                for (int t = 0; t < 3; ++t) ortho[nb][t] = w[t] / nn;
                ++nb;
            }
        }
        double w[3] = {v[0], v[1], v[2]};
        for (int j = 0; j < nb; ++j) {
            double dot = w[0] * ortho[j][0] + w[1] * ortho[j][1] + w[2] * ortho[j][2];
            for (int t = 0; t < 3; ++t) w[t] -= dot * ortho[j][t];
        }
        double res = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
        if (res > best_res) { best_res = res; best = a; }
    }
    double kxx = K[best][best];
    return {kxx < 0 ? LieLabel::E2 : LieLabel::E11, 0};
}

LieLabel identify_nonunimodular(const MetricLieAlgebra<double>& alg, double tol) {
    if (alg.n() != 3) throw std::invalid_argument("identify_nonunimodular: requires n = 3");
    double xi[3];
    double s = alg_scale(alg);
    for (int a = 1; a <= 3; ++a) {
        xi[a - 1] = 0;
        for (int b = 1; b <= 3; ++b) xi[a - 1] += cc(alg, a, b, b);
    }
    double nxi2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    if (nxi2 <= tol * tol * s * s)
        throw std::invalid_argument("identify_nonunimodular: algebra is unimodular");
    // w with xi(w) = 1, unimodular kernel u = ker xi
    double w[3] = {xi[0] / nxi2, xi[1] / nxi2, xi[2] / nxi2};
    double u1[3], u2[3];
    {
        // two vectors orthogonal to xi
        double ax = std::abs(xi[0]), ay = std::abs(xi[1]), az = std::abs(xi[2]);
        double t[3] = {0, 0, 0};
        if (ax <= ay && ax <= az) t[0] = 1;
        else if (ay <= az) t[1] = 1;
        else t[2] = 1;
        u1[0] = xi[1] * t[2] - xi[2] * t[1];
        u1[1] = xi[2] * t[0] - xi[0] * t[2];
        u1[2] = xi[0] * t[1] - xi[1] * t[0];
        u2[0] = xi[1] * u1[2] - xi[2] * u1[1];
        u2[1] = xi[2] * u1[0] - xi[0] * u1[2];
        u2[2] = xi[0] * u1[1] - xi[1] * u1[0];
        for (double* u : {u1, u2}) {
            double nn = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
            for (int i = 0; i < 3; ++i) u[i] /= nn;
        }
    }
    // A = ad_w restricted to u, in the (u1,u2) basis
    auto bracket = [&](const double x[3], const double y[3], double out[3]) {
        for (int e = 1; e <= 3; ++e) {
            double v = 0;
            for (int a = 1; a <= 3; ++a)
                for (int b = 1; b <= 3; ++b) v += x[a - 1] * y[b - 1] * cc(alg, a, b, e);
            out[e - 1] = v;
        }
    };
    double A[2][2];
    const double* us[2] = {u1, u2};
    for (int i = 0; i < 2; ++i) {
        double bu[3];
        bracket(w, us[i], bu);
        // coordinates in the orthonormal pair (u1, u2)
        A[0][i] = bu[0] * u1[0] + bu[1] * u1[1] + bu[2] * u1[2];
        A[1][i] = bu[0] * u2[0] + bu[1] * u2[1] + bu[2] * u2[2];
    }
    double trA = A[0][0] + A[1][1];
    double detA = A[0][0] * A[1][1] - A[0][1] * A[1][0];
    double scale2 = trA * trA + std::abs(detA) + 1e-30;
    double disc = trA * trA - 4 * detA;
    if (std::abs(detA) <= 1e-9 * scale2) return {LieLabel::Tau2R, 0};
    if (std::abs(disc) <= 1e-9 * scale2) {
        double half = trA / 2;
        double dev = std::max({std::abs(A[0][0] - half), std::abs(A[1][1] - half),
                               std::abs(A[0][1]), std::abs(A[1][0])});
        if (dev <= 1e-5 * std::sqrt(scale2)) return {LieLabel::Tau3Lam, 1.0};
        return {LieLabel::Tau3, 0};
    }
    if (disc > 0) {
        double r = std::sqrt(disc);
        double x1 = (trA + r) / 2, x2 = (trA - r) / 2;
        if (std::abs(x1) < std::abs(x2)) std::swap(x1, x2);
        return {LieLabel::Tau3Lam, x2 / x1};
    }
    return {LieLabel::Tau3PrimeLam, trA / std::sqrt(-disc)};
}

LieLabel identify(const MetricLieAlgebra<double>& alg, double tol) {
    return is_unimodular(alg, tol) ? identify_unimodular(alg, tol)
                                   : identify_nonunimodular(alg, tol);
}

// ---------------------------------------------------------------------------
// membership
// ---------------------------------------------------------------------------

namespace {

struct View {
    std::array<int, 3> eps;
    Tensor3<double> k;  // 1..3
    double h;
    double F12, F13, F23;
    std::array<double, 7> d;
};

View view_of(const Scene<double>& sc) {
    View v;
    v.eps = {sc.alg.frame.epsilon[1], sc.alg.frame.epsilon[2], sc.alg.frame.epsilon[3]};
    v.k = sc.alg.k;
    v.h = sc.twist.Hc(1, 2, 3);
    v.F12 = sc.twist.Fc(1, 2);
    v.F13 = sc.twist.Fc(1, 3);
    v.F23 = sc.twist.Fc(2, 3);
    for (int i = 0; i < 7; ++i) v.d[i] = sc.delta[i];
    return v;
}

int perm_sign3(const std::array<int, 3>& p) {
    int sg = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (p[i] > p[j]) sg = -sg;
    return sg;
}

View transport(const View& v, const std::array<int, 3>& p) {
    View o;
    o.k = Tensor3<double>(4);
    for (int a = 0; a < 3; ++a) o.eps[a] = v.eps[p[a] - 1];
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            for (int c = 1; c <= 3; ++c) o.k(a, b, c) = v.k(p[a - 1], p[b - 1], p[c - 1]);
    o.h = perm_sign3(p) * v.h;
    auto F = [&](int a, int b) {
        int x = p[a - 1], y = p[b - 1];
        double sg = 1;
        if (x > y) { std::swap(x, y); sg = -1; }
        if (x == 1 && y == 2) return sg * v.F12;
        if (x == 1 && y == 3) return sg * v.F13;
        return sg * v.F23;
    };
    o.F12 = F(1, 2);
    o.F13 = F(1, 3);
    o.F23 = F(2, 3);
    o.d[0] = v.d[0];
    for (int a = 1; a <= 3; ++a) {
        o.d[a] = v.d[p[a - 1]];
        o.d[a + 3] = v.d[p[a - 1] + 3];
    }
    return o;
}

Scene<double> scene_of(const View& v) {
    auto [frame, eta] = build_frame(3, {v.eps[0], v.eps[1], v.eps[2]});
    (void)eta;
    MetricLieAlgebra<double> alg{frame, v.k};
    TwistingData<double> tw{KForm<double>(3, 3), KForm<double>(3, 2)};
    tw.H.set({1, 2, 3}, v.h);
    tw.F.set({1, 2}, v.F12);
    tw.F.set({1, 3}, v.F13);
    tw.F.set({2, 3}, v.F23);
    Scene<double> sc;
    sc.alg = std::move(alg);
    sc.twist = std::move(tw);
    sc.delta.assign(v.d.begin(), v.d.end());
    return sc;
}

bool close(double x, double y, double tol) {
    return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

bool scenes_match(const View& a, const Scene<double>& gen, double tol) {
    View b = view_of(gen);
    if (a.eps != b.eps) return false;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int c = 1; c <= 3; ++c)
                if (!close(a.k(i, j, c), b.k(i, j, c), tol)) return false;
    if (!close(a.h, b.h, tol)) return false;
    if (!close(a.F12, b.F12, tol) || !close(a.F13, b.F13, tol) || !close(a.F23, b.F23, tol))
        return false;
    for (int i = 0; i < 7; ++i)
        if (!close(a.d[i], b.d[i], tol)) return false;
    return true;
}

// Extracts candidate parameters of the family from a transported view.
// Returns nullopt when the scene obviously does not present in the family's
// canonical shape.
std::optional<FamilyParams<double>> extract_params(const View& v, FamilyId id, double tol) {
    FamilyParams<double> p;
    auto sgn_of = [](double x) { return x >= 0 ? 1.0 : -1.0; };
    const double e1 = v.eps[0], e2 = v.eps[1], e3 = v.eps[2];
    p.v["eps1"] = e1;
    p.v["eps2"] = e2;
    p.v["eps3"] = e3;

    auto L_of = [&]() {
        Scene<double> sc = scene_of(v);
        return extract_L(sc.alg);
    };

    switch (id) {
        case FamilyId::DIAG: {
            auto L = L_of();
            for (int r = 1; r <= 3; ++r)
                for (int c = 1; c <= 3; ++c)
                    if (r != c && std::abs(L(r, c)) > tol) return std::nullopt;
            p.v["a2"] = L(2, 2);
            p.v["d5"] = v.d[5];
            if (std::abs(v.d[0]) > 1e-4) {
                p.v["d0"] = v.d[0];
                p.v["t"] = v.d[2] / v.d[0];
            } else {
                p.v["F13"] = v.F13;
            }
            return p;
        }
        case FamilyId::L3_1: case FamilyId::L3_2: case FamilyId::L3_3: case FamilyId::L3_4: {
            auto L = L_of();
            CanonicalTag t = canonical_tag(L, std::max(tol, 1e-7));
            if (t.tag != LTag::L3) return std::nullopt;
            p.v["eta"] = t.eta;
            if (id == FamilyId::L3_1) {
                p.v["a"] = t.alpha;
                p.v["sgn"] = sgn_of(v.F23);
            } else if (id == FamilyId::L3_2) {
                double denom = 2 * t.alpha - t.beta;
                if (std::abs(denom) < 1e-9) return std::nullopt;
                p.v["beta"] = t.beta;
                p.v["s"] = v.d[0] / denom;
            } else if (id == FamilyId::L3_3) {
                p.v["f"] = v.F12;
            } else {
                p.v["f"] = v.F12;
                p.v["d23"] = v.d[2];
                p.v["d56"] = v.d[5];
            }
            p.v.erase("eps2");
            p.v.erase("eps3");
            return p;
        }
        case FamilyId::L5: {
            auto L = L_of();
            CanonicalTag t = canonical_tag(L, std::max(tol, 1e-7));
            if (t.tag != LTag::L5 || std::abs(t.alpha) > tol) return std::nullopt;
            p.v.clear();
            p.v["eps1"] = e1;
            p.v["F12"] = v.F12;
            return p;
        }
        case FamilyId::DEG_1: case FamilyId::DEG_2: case FamilyId::DEG_F0: {
            // degenerate non-unimodular presentation
            if (e1 != e2 || e3 != -e1) return std::nullopt;
            double lam = v.k(1, 2, 1), mu = v.k(1, 2, 2);
            double nuv = -v.k(2, 3, 1), rho = -v.k(2, 3, 2);
            p.v["lam"] = lam;
            p.v["mu"] = mu;
            p.v["rho"] = rho;
            if (id == FamilyId::DEG_1) {
                p.v["F12"] = v.F12;
                p.v["d2"] = v.d[2];
                p.v["d5"] = v.d[5];
            } else if (id == FamilyId::DEG_2) {
                if (std::abs(nuv) < 1e-9) return std::nullopt;
                p.v["nu"] = nuv;
                p.v["sgn"] = sgn_of(v.F23 * nuv);
                p.v["d1"] = v.d[1];
                p.v["d4"] = v.d[4];
            } else {
                p.v["d0"] = v.d[0];
                p.v["d1"] = v.d[1];
                p.v["d4"] = v.d[4];
            }
            p.v.erase("eps2");
            p.v.erase("eps3");
            return p;
        }
        default: break;
    }

    // non-degenerate non-unimodular families
    double lam = v.k(2, 1, 1), mu = v.k(2, 1, 3);
    double nuv = v.k(2, 3, 1), rho = v.k(2, 3, 3);
    switch (id) {
        case FamilyId::ND_1A:
            p.v["lam"] = lam;
            p.v["mu"] = mu;
            p.v["sgn"] = sgn_of(v.F12);
            p.v["d3"] = v.d[3];
            p.v["d6"] = v.d[6];
            return p;
        case FamilyId::ND_1B:
            if (std::abs(lam) < 1e-12) return std::nullopt;
            p.v["lam"] = lam;
            p.v["sgn"] = sgn_of(nuv / lam);
            p.v["sgnF"] = sgn_of(v.F12 / lam);
            p.v.erase("eps1");
            p.v.erase("eps3");
            return p;
        case FamilyId::ND_2:
            if (std::abs(mu) < 1e-12) return std::nullopt;
            p.v["mu"] = mu;
            p.v["sgn"] = sgn_of(v.F12 / mu);
            p.v["sgnR"] = sgn_of(rho / mu);
            p.v.erase("eps1");
            p.v.erase("eps3");
            return p;
        case FamilyId::ND_3A: case FamilyId::ND_3B: case FamilyId::ND_3C:
            p.v["lam"] = lam;
            p.v["mu"] = mu;
            p.v["nu"] = nuv;
            p.v["sgn"] = sgn_of(v.F12);
            if (id == FamilyId::ND_3A) p.v["d1"] = v.d[1];
            if (id == FamilyId::ND_3C) { p.v["d1"] = v.d[1]; p.v["d4"] = v.d[4]; }
            return p;
        case FamilyId::ND_4A: case FamilyId::ND_4B:
            if (std::abs(mu) < 1e-12) return std::nullopt;
            p.v["mu"] = mu;
            p.v["rho"] = rho;
            p.v["sgn"] = sgn_of(v.F12 / mu);
            p.v["d1"] = v.d[1];
            if (id == FamilyId::ND_4A) p.v["d4"] = v.d[4];
            p.v.erase("eps3");
            return p;
        case FamilyId::ND_5: {
            double t = 2 * mu + nuv;
            if (std::abs(t) < 1e-12) return std::nullopt;
            p.v["mu"] = mu;
            p.v["nu"] = nuv;
            p.v["sgn"] = sgn_of(lam / t * 3);
            p.v["sgnF"] = sgn_of(v.F12);
            p.v.erase("eps3");
            return p;
        }
        case FamilyId::ND_6:
            if (std::abs(lam) < 1e-12) return std::nullopt;
            p.v["lam"] = lam;
            p.v["sgn"] = sgn_of(mu / lam);
            p.v["sgnF"] = sgn_of(v.F12 / lam);
            p.v.erase("eps1");
            p.v.erase("eps3");
            return p;
        case FamilyId::ND_7I:
            p.v["mu"] = mu;
            p.v["lamt"] = v.d[2] + e1 * lam;
            p.v["sgn"] = sgn_of(v.F12);
            return p;
        case FamilyId::ND_7II: {
            if (std::abs(nuv - mu) < 1e-12) return std::nullopt;
            double eq = 2 * v.d[2] / (nuv - mu);
            if (std::abs(std::abs(eq) - 1) > 1e-4) return std::nullopt;
            p.v["mu"] = mu;
            p.v["lamt"] = v.d[2] + e1 * lam;
            p.v["sgn"] = sgn_of(eq);
            p.v["sgnF"] = sgn_of(v.F12);
            p.v.erase("eps3");
            return p;
        }
        default: return std::nullopt;
    }
}

bool nd_family(FamilyId id) {
    switch (id) {
        case FamilyId::ND_1A: case FamilyId::ND_1B: case FamilyId::ND_2:
        case FamilyId::ND_3A: case FamilyId::ND_3B: case FamilyId::ND_3C:
        case FamilyId::ND_4A: case FamilyId::ND_4B: case FamilyId::ND_5:
        case FamilyId::ND_6: case FamilyId::ND_7I: case FamilyId::ND_7II:
            return true;
        default: return false;
    }
}

}  // namespace

MembershipFit membership(const Scene<double>& sc, FamilyId id, double tol) {
    if (sc.n() != 3) return {};
    View base = view_of(sc);
    std::vector<std::array<int, 3>> perms;
    if (id == FamilyId::DIAG)
        perms = {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
    else if (nd_family(id))
        perms = {{1, 2, 3}, {3, 2, 1}};
    else
        perms = {{1, 2, 3}};

    for (const auto& pr : perms) {
        View v = transport(base, pr);
        auto params = extract_params(v, id, tol);
        if (!params) continue;
        try {
            Scene<double> gen = generate_family<double>(id, *params);
            if (scenes_match(v, gen, tol)) {
                MembershipFit fit;
                fit.ok = true;
                for (const auto& [kk, vv] : params->v) fit.params[kk] = vv;
                return fit;
            }
        } catch (const std::invalid_argument&) {
            // constraint violated for this presentation; try the next one
        }
    }
    return {};
}

}  // namespace oge
