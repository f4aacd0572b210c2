#include "oge/solver.hpp"

#include <algorithm>
#include <cmath>

namespace oge {

std::string ansatz_name(AnsatzKind k) {
    switch (k) {
        case AnsatzKind::Diag: return "diag";
        case AnsatzKind::DiagCase1: return "diag-case1";
        case AnsatzKind::DiagCase3: return "diag-case3";
        case AnsatzKind::DiagCase4: return "diag-case4";
        case AnsatzKind::L2: return "l2";
        case AnsatzKind::L3Eta: return "l3";
        case AnsatzKind::L5: return "l5";
        case AnsatzKind::Deg: return "deg";
        case AnsatzKind::NonDeg: return "nondeg";
    }
    return "?";
}

std::optional<AnsatzKind> ansatz_from_name(const std::string& s) {
    for (AnsatzKind k : {AnsatzKind::Diag, AnsatzKind::DiagCase1, AnsatzKind::DiagCase3,
                         AnsatzKind::DiagCase4, AnsatzKind::L2, AnsatzKind::L3Eta, AnsatzKind::L5,
                         AnsatzKind::Deg, AnsatzKind::NonDeg})
        if (ansatz_name(k) == s) return k;
    return std::nullopt;
}

std::vector<std::string> Ansatz::variables() const {
    std::vector<std::string> base;
    switch (kind) {
        case AnsatzKind::Diag:
        case AnsatzKind::DiagCase1:
            base = {"a1", "a2", "a3", "h"};
            break;
        case AnsatzKind::DiagCase3:
            base = {"a3", "h"};  // a1 = a2 = -h structural
            break;
        case AnsatzKind::DiagCase4:
            base = {"h"};  // a1 = a2 = a3 = -h structural
            break;
        case AnsatzKind::L2:
            base = {"alpha", "beta", "gamma", "h"};
            break;
        case AnsatzKind::L3Eta:
            base = {"alpha", "beta", "h"};
            break;
        case AnsatzKind::L5:
            base = {"alpha", "h"};
            break;
        case AnsatzKind::Deg:
        case AnsatzKind::NonDeg:
            base = {"lam", "mu", "nu", "rho", "h"};
            break;
    }
    bool deg = kind == AnsatzKind::Deg, nondeg = kind == AnsatzKind::NonDeg;
    base.push_back("F12");
    if (!deg && !nondeg) base.push_back("F13");  // deg: F13 = -F12; nondeg: F13 = 0
    base.push_back("F23");
    for (int i = 0; i <= 6; ++i) base.push_back("d" + std::to_string(i));
    std::vector<std::string> out;
    for (auto& v : base)
        if (!frozen.count(v)) out.push_back(v);
    return out;
}

bool scene_from_point(const Ansatz& a, const std::vector<double>& x, Scene<double>& out,
                      std::string* why) {
    auto vars = a.variables();
    if (x.size() != vars.size()) throw std::invalid_argument("scene_from_point: arity mismatch");
    std::map<std::string, double> val = a.frozen;
    for (size_t i = 0; i < vars.size(); ++i) val[vars[i]] = x[i];
    auto g = [&](const std::string& k) {
        auto it = val.find(k);
        return it == val.end() ? 0.0 : it->second;
    };
    auto fail = [&](const char* msg) {
        if (why) *why = msg;
        return false;
    };

    MetricLieAlgebra<double> alg;
    double F13 = 0;
    try {
        switch (a.kind) {
            case AnsatzKind::Diag:
            case AnsatzKind::DiagCase1:
                alg = bracket_from_L(L1(g("a1"), g("a2"), g("a3")), a.eps);
                F13 = g("F13");
                break;
            case AnsatzKind::DiagCase3:
                alg = bracket_from_L(L1(-g("h"), -g("h"), g("a3")), a.eps);
                F13 = g("F13");
                break;
            case AnsatzKind::DiagCase4:
                alg = bracket_from_L(L1(-g("h"), -g("h"), -g("h")), a.eps);
                F13 = g("F13");
                break;
            case AnsatzKind::L2:
                if (std::abs(g("beta")) < 1e-12) return fail("beta = 0 outside the L2 family");
                alg = bracket_from_L(L2(g("alpha"), g("beta"), g("gamma")), a.eps);
                F13 = g("F13");
                break;
            case AnsatzKind::L3Eta:
                alg = bracket_from_L(L3(a.eta, g("alpha"), g("beta")), a.eps);
                F13 = g("F13");
                break;
            case AnsatzKind::L5:
                alg = bracket_from_L(L5(g("alpha")), a.eps);
                F13 = g("F13");
                break;
            case AnsatzKind::Deg: {
                NonUnimodularParams<double> p{true, g("lam"), g("mu"), g("nu"), g("rho"), a.eps};
                if (std::abs(g("lam") + g("rho")) < 1e-12)
                    return fail("lambda + rho = 0 outside the degenerate family");
                alg = bracket_nonunimodular(p).alg;
                F13 = -g("F12");
                break;
            }
            case AnsatzKind::NonDeg: {
                NonUnimodularParams<double> p{false, g("lam"), g("mu"), g("nu"), g("rho"), a.eps};
                double tr = a.eps[0] * g("lam") + a.eps[2] * g("rho");
                if (std::abs(tr) < 1e-12)
                    return fail("eps1 lambda + eps3 rho = 0 outside the non-degenerate family");
                alg = bracket_nonunimodular(p).alg;
                F13 = 0;
                break;
            }
        }
    } catch (const std::invalid_argument& e) {
        if (why) *why = e.what();
        return false;
    }

    TwistingData<double> tw{KForm<double>(3, 3), KForm<double>(3, 2)};
    tw.H.set({1, 2, 3}, g("h"));
    tw.F.set({1, 2}, g("F12"));
    tw.F.set({1, 3}, F13);
    tw.F.set({2, 3}, g("F23"));
    out.alg = std::move(alg);
    out.twist = std::move(tw);
    out.delta.resize(7);
    for (int i = 0; i <= 6; ++i) out.delta[i] = g("d" + std::to_string(i));
    return true;
}

std::vector<double> residual_fn(const Ansatz& a, const std::vector<double>& x) {
    Scene<double> sc;
    std::string why;
    if (!scene_from_point(a, x, sc, &why))
        throw std::domain_error("residual_fn: out of ansatz domain: " + why);
    return einstein_residual(sc).flatten();
}

namespace {

double rnd01(std::uint64_t& s) {
    // xorshift64*; uniform in [0,1)
    s ^= s >> 12;
    s ^= s << 25;
    s ^= s >> 27;
    return double((s * 0x2545F4914F6CDD1DULL) >> 11) * 0x1.0p-53;
}

double inf_norm(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Solves (JtJ + lam diag(JtJ)) dx = -Jt r in place; returns false if singular.
bool lm_step(const std::vector<std::vector<double>>& J, const std::vector<double>& r, double lam,
             std::vector<double>& dx) {
    const size_t m = J.size(), nvar = m ? J[0].size() : 0;
    std::vector<std::vector<double>> A(nvar, std::vector<double>(nvar + 1, 0.0));
    for (size_t i = 0; i < nvar; ++i) {
        for (size_t j = 0; j < nvar; ++j) {
            double s = 0;
            for (size_t k = 0; k < m; ++k) s += J[k][i] * J[k][j];
            A[i][j] = s;
        }
        double g = 0;
        for (size_t k = 0; k < m; ++k) g += J[k][i] * r[k];
        A[i][nvar] = -g;
    }
    for (size_t i = 0; i < nvar; ++i) A[i][i] += lam * std::max(A[i][i], 1e-12);
    // Gaussian elimination with partial pivoting
    for (size_t c = 0; c < nvar; ++c) {
        size_t piv = c;
        for (size_t r2 = c + 1; r2 < nvar; ++r2)
            if (std::abs(A[r2][c]) > std::abs(A[piv][c])) piv = r2;
        if (std::abs(A[piv][c]) < 1e-300) return false;
        std::swap(A[piv], A[c]);
        for (size_t r2 = 0; r2 < nvar; ++r2) {
            if (r2 == c) continue;
            double f = A[r2][c] / A[c][c];
            for (size_t c2 = c; c2 <= nvar; ++c2) A[r2][c2] -= f * A[c][c2];
        }
    }
    dx.assign(nvar, 0.0);
    for (size_t i = 0; i < nvar; ++i) dx[i] = A[i][nvar] / A[i][i];
    return true;
}

struct LMResult {
    std::vector<double> x;
    double rn = 1e300;
    bool in_domain = false;
};

LMResult lm_minimize(const Ansatz& a, std::vector<double> x, int max_iter) {
    Scene<double> sc;
    auto eval = [&](const std::vector<double>& p, std::vector<double>& r) {
        if (!scene_from_point(a, p, sc)) return false;
        r = einstein_residual(sc).flatten();
        return true;
    };
    std::vector<double> r;
    if (!eval(x, r)) return {};
    const size_t nvar = x.size(), m = r.size();
    double lam = 1e-3, nu = 2;
    std::vector<std::vector<double>> J(m, std::vector<double>(nvar));
    std::vector<double> rj, dx, xt, rt;
    for (int it = 0; it < max_iter; ++it) {
        double rn = inf_norm(r);
        if (rn < 1e-14) break;
        // forward-difference Jacobian, step 1e-7 max(1, |x_i|)
        bool ok = true;
        for (size_t i = 0; i < nvar && ok; ++i) {
            double h = 1e-7 * std::max(1.0, std::abs(x[i]));
            std::vector<double> xp = x;
            xp[i] += h;
            ok = eval(xp, rj);
            if (!ok) { xp[i] = x[i] - h; ok = eval(xp, rj); h = -h; }
            if (!ok) break;
            for (size_t k = 0; k < m; ++k) J[k][i] = (rj[k] - r[k]) / h;
        }
        if (!ok) break;
        // gradient stopping
        double gmax = 0;
        for (size_t i = 0; i < nvar; ++i) {
            double g = 0;
            for (size_t k = 0; k < m; ++k) g += J[k][i] * r[k];
            gmax = std::max(gmax, std::abs(g));
        }
        if (gmax < 1e-16) break;
        bool stepped = false;
        for (int tries = 0; tries < 8 && !stepped; ++tries) {
            if (!lm_step(J, r, lam, dx)) { lam *= 4; continue; }
            xt = x;
            for (size_t i = 0; i < nvar; ++i) xt[i] += dx[i];
            if (!eval(xt, rt)) { lam *= 4; continue; }
            double f0 = 0, f1 = 0;
            for (size_t k = 0; k < m; ++k) { f0 += r[k] * r[k]; f1 += rt[k] * rt[k]; }
            // predicted reduction for the gain ratio
            double pred = 0;
            for (size_t i = 0; i < nvar; ++i) {
                double g = 0;
                for (size_t k = 0; k < m; ++k) g += J[k][i] * r[k];
                pred += dx[i] * (lam * dx[i] - g);
            }
            double rho = pred > 0 ? (f0 - f1) / pred : (f1 < f0 ? 1.0 : -1.0);
            if (f1 < f0) {
                x = xt;
                r = rt;
                double c = 2 * rho - 1;
                lam *= std::max(1.0 / 3.0, 1 - c * c * c);
                nu = 2;
                stepped = true;
            } else {
                lam *= nu;
                nu *= 2;
                if (lam > 1e12) break;
            }
        }
        double dn = 0;
        for (double d : dx) dn = std::max(dn, std::abs(d));
        if (!stepped || dn < 1e-13) break;
    }
    LMResult res;
    res.x = x;
    res.rn = inf_norm(r);
    res.in_domain = true;
    return res;
}

// Strict-wall filter for converged points. Returns false (with a reason)
// when the point sits on an excluded boundary of the ansatz.
bool passes_walls(const Ansatz& a, const std::vector<double>& x) {
    auto vars = a.variables();
    std::map<std::string, double> val = a.frozen;
    for (size_t i = 0; i < vars.size(); ++i) val[vars[i]] = x[i];
    auto g = [&](const std::string& k) {
        auto it = val.find(k);
        return it == val.end() ? 0.0 : it->second;
    };
    // the classification assumes F != 0 throughout; the F -> 0 boundary is the
    // ordinary generalized-metric regime and is excluded from every ansatz
    double F13 = a.kind == AnsatzKind::Deg ? -g("F12")
               : a.kind == AnsatzKind::NonDeg ? 0.0 : g("F13");
    double fmax = std::max({std::abs(g("F12")), std::abs(F13), std::abs(g("F23"))});
    if (fmax < a.f_margin) return false;
    switch (a.kind) {
        case AnsatzKind::DiagCase1:
            for (const char* k : {"a1", "a2", "a3"})
                if (std::abs(g("h") + g(k)) < a.wall_margin) return false;
            return true;
        case AnsatzKind::DiagCase3:
            return std::abs(g("h") + g("a3")) >= a.wall_margin;
        case AnsatzKind::L2:
            return std::abs(g("beta")) >= 1e-6;
        case AnsatzKind::Deg:
            return std::abs(g("lam") + g("rho")) >= 1e-6;
        case AnsatzKind::NonDeg:
            return std::abs(a.eps[0] * g("lam") + a.eps[2] * g("rho")) >= 1e-6;
        default:
            return true;
    }
}

std::vector<FamilyId> candidate_families(AnsatzKind k) {
    switch (k) {
        case AnsatzKind::Diag:
        case AnsatzKind::DiagCase1:
        case AnsatzKind::DiagCase3:
        case AnsatzKind::DiagCase4:
            return {FamilyId::DIAG};
        case AnsatzKind::L2:
            return {};
        case AnsatzKind::L3Eta:
            return {FamilyId::L3_1, FamilyId::L3_2, FamilyId::L3_3, FamilyId::L3_4};
        case AnsatzKind::L5:
            return {FamilyId::L5};
        case AnsatzKind::Deg:
            return {FamilyId::DEG_1, FamilyId::DEG_2, FamilyId::DEG_F0};
        case AnsatzKind::NonDeg:
            return {FamilyId::ND_1A, FamilyId::ND_1B, FamilyId::ND_2,  FamilyId::ND_3A,
                    FamilyId::ND_3B, FamilyId::ND_3C, FamilyId::ND_4A, FamilyId::ND_4B,
                    FamilyId::ND_5,  FamilyId::ND_6,  FamilyId::ND_7I, FamilyId::ND_7II};
    }
    return {};
}

// canonical representative under the (F, delta_0) -> (-F, -delta_0) symmetry
std::vector<double> canonical_point(const Ansatz& a, std::vector<double> x) {
    auto vars = a.variables();
    int first_f = -1;
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i][0] == 'F' || vars[i] == "d0") {
            if (vars[i][0] == 'F' && first_f < 0 && std::abs(x[i]) > 1e-9) first_f = int(i);
        }
    if (first_f >= 0 && x[first_f] < 0) {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i][0] == 'F' || vars[i] == "d0") x[i] = -x[i];
    }
    return x;
}

}  // namespace

SolveReport solve(const Ansatz& a, int starts, uint64_t seed, double tol) {
    if (starts < 1) throw std::invalid_argument("solve: starts must be >= 1");
    SolveReport rep;
    rep.ansatz = a;
    rep.starts = starts;
    rep.seed = seed;
    rep.tol = tol;

    auto vars = a.variables();
    const size_t nvar = vars.size();
    std::uint64_t rng = seed ? seed : 0x9E3779B97F4A7C15ULL;
    for (int i = 0; i < 8; ++i) rnd01(rng);

    std::vector<Root> found;
    for (int s = 0; s < starts; ++s) {
        std::vector<double> x0(nvar);
        for (size_t i = 0; i < nvar; ++i)
            x0[i] = a.box_lo + (a.box_hi - a.box_lo) * rnd01(rng);
        LMResult r = lm_minimize(a, x0, 120);
        if (!r.in_domain || r.rn > tol) continue;
        ++rep.converged;
        if (!passes_walls(a, r.x)) {
            ++rep.rejected_wall;
            continue;
        }
        Root root;
        root.x = canonical_point(a, r.x);
        root.residual = r.rn;
        Scene<double> sc;
        if (scene_from_point(a, root.x, sc)) {
            for (FamilyId id : candidate_families(a.kind)) {
                MembershipFit fit = membership(sc, id, 1e-5);
                if (fit.ok) {
                    root.family = family_name(id);
                    root.fit = fit.params;
                    break;
                }
            }
        }
        found.push_back(std::move(root));
    }
    // deterministic reduction: sort then deduplicate by parameter distance
    std::sort(found.begin(), found.end(), [](const Root& l, const Root& r) {
        return std::lexicographical_compare(l.x.begin(), l.x.end(), r.x.begin(), r.x.end());
    });
    for (auto& root : found) {
        bool dup = false;
        for (const auto& kept : rep.roots) {
            double d = 0;
            for (size_t i = 0; i < root.x.size(); ++i)
                d = std::max(d, std::abs(root.x[i] - kept.x[i]));
            if (d < 1e-6) { dup = true; break; }
        }
        if (!dup) {
            if (!root.family.empty()) ++rep.matched;
            rep.roots.push_back(std::move(root));
        }
    }
    return rep;
}

}  // namespace oge
