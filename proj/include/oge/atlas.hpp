#pragma once

#include <map>
#include <optional>
#include <string>

#include "oge/canon.hpp"
#include "oge/einstein.hpp"

namespace oge {

/// The classified solution families on 3-dimensional Lie groups.
enum class FamilyId {
    DIAG,
    L3_1, L3_2, L3_3, L3_4,
    L5,
    DEG_1, DEG_2, DEG_F0,
    ND_1A, ND_1B, ND_2, ND_3A, ND_3B, ND_3C, ND_4A, ND_4B, ND_5, ND_6,
    ND_7I, ND_7II,
};

const std::vector<FamilyId>& all_families();
std::string family_name(FamilyId id);
std::optional<FamilyId> family_from_name(const std::string& s);

/// Free parameters of a family instance, by name. Sign parameters must be
/// exactly +1 or -1.
template <class S>
struct FamilyParams {
    std::map<std::string, S> v;

    bool has(const std::string& k) const { return v.count(k) != 0; }
    const S& req(const std::string& k) const {
        auto it = v.find(k);
        if (it == v.end()) throw std::invalid_argument("missing family parameter '" + k + "'");
        return it->second;
    }
    S opt(const std::string& k, const S& def) const {
        auto it = v.find(k);
        return it == v.end() ? def : it->second;
    }
    int sig(const std::string& k, int def) const {
        auto it = v.find(k);
        if (it == v.end()) return def;
        double x = scalar_ops<S>::value(it->second);
        if (std::abs(x - 1) < 1e-9) return 1;
        if (std::abs(x + 1) < 1e-9) return -1;
        throw std::invalid_argument("family parameter '" + k + "' must be +1 or -1");
    }
};

namespace detail {

template <class S>
void check_redundant(const FamilyParams<S>& p, const std::string& k, const S& expected) {
    if (!p.has(k)) return;
    S given = p.req(k);
    if (!scalar_ops<S>::is_zero(given - expected, 1e-9))
        throw std::invalid_argument("family parameter '" + k + "' inconsistent with the family relations");
}

template <class S>
void require(bool cond, const std::string& constraint) {
    if (!cond) throw std::invalid_argument("family constraint violated: " + constraint);
}

template <class S>
bool nz(const S& x) {
    return !scalar_ops<S>::is_zero(x, 0.0);
}

template <class S>
Scene<S> assemble(MetricLieAlgebra<S> alg, const S& h, const S& F12, const S& F13, const S& F23,
                  const std::array<S, 7>& delta) {
    TwistingData<S> tw{KForm<S>(3, 3), KForm<S>(3, 2)};
    tw.H.set({1, 2, 3}, h);
    tw.F.set({1, 2}, F12);
    tw.F.set({1, 3}, F13);
    tw.F.set({2, 3}, F23);
    Scene<S> sc;
    sc.alg = std::move(alg);
    sc.twist = std::move(tw);
    sc.delta.assign(delta.begin(), delta.end());
    return sc;
}

}  // namespace detail

/// Builds a complete scene (algebra, twist, divergence) of the requested
/// family; the scene satisfies the Einstein system identically. Parameter
/// constraints are validated and violations name the offending inequality.
template <class S>
Scene<S> generate_family(FamilyId id, const FamilyParams<S>& p) {
    using detail::assemble;
    using detail::check_redundant;
    using detail::nz;
    auto req_c = [](bool c, const char* msg) { detail::require<S>(c, msg); };
    const S zero{};
    const S one = scalar_ops<S>::from_int(1);
    auto I = [](int v) { return scalar_ops<S>::from_int(v); };

    switch (id) {
        case FamilyId::DIAG: {
            int e1 = p.sig("eps1", 1), e2 = p.sig("eps2", 1), e3 = p.sig("eps3", 1);
            S a2 = p.req("a2");
            req_c(nz(a2), "alpha2 != 0");
            S d5 = p.opt("d5", zero);
            S a1, F13, d0 = zero, d2 = zero;
            if (p.has("d0") && nz(p.req("d0"))) {
                d0 = p.req("d0");
                S t = p.has("t") ? p.req("t") : p.req("d2") / d0;
                req_c(nz(t), "delta2 != 0 on the delta0 delta2 != 0 branch");
                a1 = a2 + I(e2) * t * t * a2;
                F13 = I(e2) * a2 * t;
                d2 = t * d0;
            } else {
                F13 = p.req("F13");
                req_c(nz(F13), "F13 != 0");
                a1 = a2 + I(e2) * F13 * F13 / a2;
            }
            req_c(nz(a1 - a2), "eps2 alpha2 (alpha1 - alpha2) > 0");
            check_redundant(p, "a1", a1);
            check_redundant(p, "a3", a1);
            check_redundant(p, "h", -a2);
            check_redundant(p, "F13", F13);
            auto alg = bracket_from_L(L1(a1, a2, a1), {e1, e2, e3});
            return assemble(std::move(alg), -a2, zero, F13, zero,
                            {d0, zero, d2, zero, zero, d5, zero});
        }
        case FamilyId::L3_1: {
            int eta = p.sig("eta", 1), sg = p.sig("sgn", 1);
            S a = p.req("a");
            req_c(nz(a), "beta = 2 alpha != 0");
            S F23 = I(sg) * scalar_ops<S>::sqrt(I(2)) * a;
            auto alg = bracket_from_L(L3(eta, a, a + a), {-1, -1, 1});
            return assemble(std::move(alg), -(a + a), zero, zero, F23,
                            {zero, zero, zero, zero, zero, zero, zero});
        }
        case FamilyId::L3_2: {
            int e1 = p.sig("eps1", -1), eta = p.sig("eta", 1);
            S b = p.req("beta"), s = p.req("s");
            req_c(nz(b), "beta != 0");
            req_c(nz(s), "s != 0 (s^2 = eps1 beta / (alpha - beta))");
            S a = b + I(e1) * b / (s * s);
            req_c(nz(a + a - b), "beta != 2 alpha");
            S d0 = s * (a + a - b);
            S d1 = I(e1) * (b - a - a);
            S F23 = b * (a + a - b) / d0;
            auto alg = bracket_from_L(L3(eta, a, b), {e1, e1, -e1});
            return assemble(std::move(alg), -b, zero, zero, F23, {d0, d1, zero, zero, d1, zero, zero});
        }
        case FamilyId::L3_3: {
            int e1 = p.sig("eps1", -1), eta = p.sig("eta", 1);
            S f = p.req("f");
            req_c(nz(f), "(F12)^2 = -eps1 alpha eta / 2 > 0");
            S a = I(-2 * e1 * eta) * f * f;
            S d1 = I(-e1) * a;
            auto alg = bracket_from_L(L3(eta, a, zero), {e1, e1, -e1});
            return assemble(std::move(alg), zero, f, f, zero, {zero, d1, zero, zero, d1, zero, zero});
        }
        case FamilyId::L3_4: {
            int e1 = p.sig("eps1", -1), eta = p.sig("eta", 1);
            S f = p.req("f");
            req_c(nz(f), "(F12)^2 = -eps1 alpha eta / 2 > 0");
            S a = I(-2 * e1 * eta) * f * f;
            S d23 = p.opt("d23", zero), d56 = p.opt("d56", zero);
            S d0 = I(e1) * a * d23 / f;
            auto alg = bracket_from_L(L3(eta, a, a), {e1, e1, -e1});
            return assemble(std::move(alg), -a, f, f, zero, {d0, zero, d23, d23, zero, d56, d56});
        }
        case FamilyId::L5: {
            int e1 = p.sig("eps1", 1);
            S q = p.req("F12");
            req_c(nz(q), "eps1 + delta1/sqrt(2) < 0 requires F12 != 0");
            S d1 = scalar_ops<S>::sqrt(I(2)) * (-(I(e1) + q * q));
            auto alg = bracket_from_L(L5(zero), {e1, e1, -e1});
            return assemble(std::move(alg), zero, q, zero, -q, {zero, d1, zero, d1, d1, zero, d1});
        }
        case FamilyId::DEG_1: {
            int e1 = p.sig("eps1", -1);
            S lam = p.req("lam"), rho = p.req("rho"), mu = p.opt("mu", zero), f = p.req("F12");
            req_c(nz(lam + rho), "lambda + rho != 0");
            req_c(nz(f), "(F12)^2 > 0");
            S d2, d5;
            if (nz(rho)) {
                d2 = (f * f + I(e1) * (lam * lam + rho * rho)) / rho;
                d5 = p.opt("d5", d2);
                req_c(!nz(d5 - d2), "rho (delta2 - delta5) = 0");
            } else {
                req_c(e1 == -1, "(F12)^2 = -eps1 lambda^2 requires eps1 = -1 when rho = 0");
                req_c(!nz(f * f - lam * lam), "(F12)^2 = lambda^2 when rho = 0");
                d2 = p.opt("d2", zero);
                d5 = p.opt("d5", zero);
            }
            NonUnimodularParams<S> np{true, lam, mu, zero, rho, {e1, e1, -e1}};
            auto nu_alg = bracket_nonunimodular(np);
            return assemble(std::move(nu_alg.alg), zero, f, -f, zero,
                            {zero, zero, d2, -d2, zero, d5, -d5});
        }
        case FamilyId::DEG_2: {
            int eF = p.sig("sgn", 1);
            S lam = p.req("lam"), mu = p.opt("mu", zero), nu = p.req("nu"), rho = p.req("rho");
            req_c(nz(nu), "nu != 0");
            req_c(nz(lam + rho), "lambda + rho != 0");
            S d1, d4;
            if (nz(lam * rho - mu * nu)) {
                d1 = -nu;
                d4 = -nu;
                check_redundant(p, "d1", d1);
                check_redundant(p, "d4", d4);
            } else {
                d1 = p.opt("d1", zero);
                d4 = p.opt("d4", zero);
            }
            S d3 = lam + rho + lam * d1 / nu;
            S d6 = lam + rho + lam * d4 / nu;
            NonUnimodularParams<S> np{true, lam, mu, nu, rho, {-1, -1, 1}};
            auto nu_alg = bracket_nonunimodular(np);
            return assemble(std::move(nu_alg.alg), nu, I(-eF) * lam, I(eF) * lam, I(eF) * nu,
                            {I(-eF) * d1, d1, -d3, d3, d4, -d6, d6});
        }
        case FamilyId::DEG_F0: {
            int e1 = p.sig("eps1", 1);
            S lam = p.req("lam"), mu = p.opt("mu", zero), rho = p.req("rho");
            req_c(nz(lam + rho), "lambda + rho != 0");
            S d0 = p.opt("d0", zero), d1, d4, d2, d5;
            if (nz(lam)) {
                req_c(nz(rho), "mu delta1 + rho delta2 = eps1 (lambda^2 + rho^2) needs rho != 0 when lambda != 0");
                d1 = d4 = zero;
                d2 = I(e1) * (lam * lam + rho * rho) / rho;
                d5 = d2;
            } else {
                req_c(nz(rho), "lambda + rho != 0");
                d1 = p.opt("d1", zero);
                d4 = p.opt("d4", zero);
                d2 = (I(e1) * rho * rho - mu * d1) / rho;
                d5 = (I(e1) * rho * rho - mu * d4) / rho;
            }
            NonUnimodularParams<S> np{true, lam, mu, zero, rho, {e1, e1, -e1}};
            auto nu_alg = bracket_nonunimodular(np);
            return assemble(std::move(nu_alg.alg), zero, zero, zero, zero,
                            {d0, d1, d2, -d2, d4, d5, -d5});
        }
        case FamilyId::ND_1A: {
            int e1 = p.sig("eps1", -1), e2 = p.sig("eps2", 1), e3 = p.sig("eps3", 1);
            int sg = p.sig("sgn", 1);
            S lam = p.req("lam"), mu = p.opt("mu", zero);
            req_c(nz(lam), "lambda != 0");
            S fsq = -(I(e1) * lam * lam + I(e3) * mu * mu);
            req_c(scalar_ops<S>::sign(fsq) > 0, "(F12)^2 = -(eps1 lambda^2 + eps3 mu^2) > 0");
            S F12 = I(sg) * scalar_ops<S>::sqrt(fsq);
            S d3 = p.opt("d3", zero), d6 = p.opt("d6", zero);
            S d0 = I(e3) * mu * d3 / F12;
            S d2 = I(-e1) * lam;
            NonUnimodularParams<S> np{false, lam, mu, zero, zero, {e1, e2, e3}};
            auto nu_alg = bracket_nonunimodular(np);
            return assemble(std::move(nu_alg.alg), mu, F12, zero, zero, {d0, zero, d2, d3, zero, d2, d6});
        }
        case FamilyId::ND_1B: {
            int sg = p.sig("sgn", 1), st = p.sig("sgnF", 1), e2 = p.sig("eps2", 1);
            S lam = p.req("lam");
            req_c(nz(lam), "lambda != 0");
            S F12 = I(st) * scalar_ops<S>::sqrt(I(3)) * lam;
            NonUnimodularParams<S> np{false, lam, zero, I(2 * sg) * lam, -(lam + lam), {-1, e2, 1}};
            auto nu_alg = bracket_nonunimodular(np);
            return assemble(std::move(nu_alg.alg), zero, F12, zero, zero,
                            {zero, zero, lam, zero, zero, lam, zero});
        }
        case FamilyId::ND_2: {
            int eF = p.sig("sgn", 1), et = p.sig("sgnR", 1), e2 = p.sig("eps2", 1);
            S mu = p.req("mu");
            req_c(nz(mu), "mu != 0");
            S rho = I(et) * mu;
            NonUnimodularParams<S> np{false, zero, mu, -(mu + mu), rho, {-1, e2, 1}};
            auto nu_alg = bracket_nonunimodular(np);
            return assemble(std::move(nu_alg.alg), mu, I(eF) * mu, zero, I(eF) * rho,
                            {zero, zero, -rho, zero, zero, -rho, zero});
        }
        case FamilyId::ND_3A:
        case FamilyId::ND_3B:
        case FamilyId::ND_3C: {
            int e1 = p.sig("eps1", -1), e2 = p.sig("eps2", 1), e3 = p.sig("eps3", 1);
            int sg = p.sig("sgn", 1);
            S lam = p.req("lam"), nu = p.req("nu"), mu = p.opt("mu", zero);
            req_c(nz(lam) && nz(nu), "lambda nu != 0");
            S rho = mu * nu / lam;  // lambda rho = mu nu
            S tr = I(e1) * lam + I(e3) * rho;
            req_c(nz(tr), "eps1 lambda + eps3 rho != 0");
            S fsq = -(I(e1) * lam * lam + I(e3) * mu * mu);
            req_c(scalar_ops<S>::sign(fsq) > 0, "eps1 lambda^2 + eps3 mu^2 < 0");
            S d1, d4;
            if (id == FamilyId::ND_3A) {
                d1 = p.req("d1");
                req_c(nz(d1), "delta1 = delta4 != 0");
                d4 = d1;
            } else if (id == FamilyId::ND_3B) {
                d1 = d4 = zero;
                bool alt1 = !nz(rho) && !nz(mu) && e1 == -1;
                bool alt2 = nz(mu - nu) && nz(rho);
                req_c(alt1 || alt2, "(rho = mu = 0, eps1 = -1) or (mu - nu) rho != 0");
            } else {
                d1 = p.opt("d1", zero);
                d4 = p.req("d4");
                req_c(nz(d1 - d4), "delta1 != delta4");
            }
            S F12 = I(sg) * scalar_ops<S>::sqrt(fsq);
            S F23 = -(nu / lam) * F12;
            S d0 = I(e1) * (lam / nu) * d1 * (nu - mu) / F12;
            S d2 = -tr;
            S d3 = I(-e1 * e3) * (lam / nu) * d1;
            S d6 = I(-e1 * e3) * (lam / nu) * d4;
            NonUnimodularParams<S> np{false, lam, mu, nu, rho, {e1, e2, e3}};
            auto nu_alg = bracket_nonunimodular(np);
            return assemble(std::move(nu_alg.alg), mu - nu, F12, zero, F23, {d0, d1, d2, d3, d4, d2, d6});
        }
        case FamilyId::ND_4A:
        case FamilyId::ND_4B: {
            int e1 = p.sig("eps1", 1), e2 = p.sig("eps2", 1), eF = p.sig("sgn", 1);
            S mu = p.req("mu"), rho = p.req("rho");
            req_c(nz(mu) && nz(rho), "rho mu != 0");
            S d1, d4;
            if (id == FamilyId::ND_4B) {
                d1 = p.req("d1");
                req_c(nz(d1), "delta1 delta3 != 0");
                d4 = d1;
            } else {
                d1 = p.opt("d1", zero);
                d4 = p.opt("d4", zero);
                req_c(!nz(d1) || nz(d1 - d4), "delta0 = 0 or delta0 (delta1 - delta4) != 0");
            }
            S d3 = I(e1) * (mu / rho) * d1;
            S d6 = I(e1) * (mu / rho) * d4;
            S d0 = I(-eF) * d3;
            NonUnimodularParams<S> np{false, zero, mu, zero, rho, {e1, e2, -1}};
            auto nu_alg = bracket_nonunimodular(np);
            return assemble(std::move(nu_alg.alg), mu, I(eF) * mu, zero, I(-eF) * rho,
                            {d0, d1, rho, d3, d4, rho, d6});
        }
        case FamilyId::ND_5: {
            int e1 = p.sig("eps1", 1), e2 = p.sig("eps2", 1), eL = p.sig("sgn", 1);
            int sg = p.sig("sgnF", 1);
            S mu = p.req("mu"), nu = p.req("nu");
            S fsq = I(e1) * (mu * mu - nu * nu) / I(3);
            req_c(scalar_ops<S>::sign(fsq) > 0, "eps1 (mu^2 - nu^2) > 0");
            req_c(nz(mu + nu + nu), "mu + 2 nu != 0");
            req_c(nz(nu + mu + mu), "nu + 2 mu != 0");
            S third = scalar_ops<S>::frac(eL, 3);
            S lam = third * (mu + mu + nu);
            S rho = third * (nu + nu + mu);
            S F12 = I(sg) * scalar_ops<S>::sqrt(fsq);
            S d2 = scalar_ops<S>::frac(eL * e1, 3) * (nu - mu);
            NonUnimodularParams<S> np{false, lam, mu, nu, rho, {e1, e2, -e1}};
            auto nu_alg = bracket_nonunimodular(np);
            return assemble(std::move(nu_alg.alg), scalar_ops<S>::frac(1, 3) * (mu - nu), F12, zero,
                            I(-eL) * F12, {zero, zero, d2, zero, zero, d2, zero});
        }
        case FamilyId::ND_6: {
            int eM = p.sig("sgn", 1), eT = p.sig("sgnF", 1), e2 = p.sig("eps2", 1);
            S lam = p.req("lam");
            req_c(nz(lam), "rho = -2 lambda != 0");
            NonUnimodularParams<S> np{false, lam, I(2 * eM) * lam, zero, -(lam + lam), {1, e2, -1}};
            auto nu_alg = bracket_nonunimodular(np);
            return assemble(std::move(nu_alg.alg), zero, I(eT) * lam, zero, I(2 * eM * eT) * lam,
                            {zero, zero, -lam, zero, zero, -lam, zero});
        }
        case FamilyId::ND_7I: {
            int e1 = p.sig("eps1", -1), e2 = p.sig("eps2", 1), e3 = p.sig("eps3", 1);
            int sg = p.sig("sgn", 1);
            S mu = p.req("mu"), lt = p.req("lamt");
            req_c(nz(mu) && nz(lt), "mu lambda~ != 0");
            S rt = I(e1 * e3) * mu * mu / lt;
            S d2 = lt + rt;
            req_c(nz(d2), "eps1 lambda + eps3 rho != 0");
            S fsq = -(mu / lt) * (mu / lt) * (I(e3) * lt * lt + I(e1) * mu * mu);
            req_c(scalar_ops<S>::sign(fsq) > 0, "(F12)^2 = -(mu/lambda~)^2 (eps3 lambda~^2 + eps1 mu^2) > 0");
            S F12 = I(sg) * scalar_ops<S>::sqrt(fsq);
            S F23 = F12 * I(e3) * lt / mu;  // nu = mu
            S lam = I(e1) * (lt - d2);
            S rho = I(e3) * (rt - d2);
            NonUnimodularParams<S> np{false, lam, mu, mu, rho, {e1, e2, e3}};
            auto nu_alg = bracket_nonunimodular(np);
            return assemble(std::move(nu_alg.alg), zero, F12, zero, F23, {zero, zero, d2, zero, zero, d2, zero});
        }
        case FamilyId::ND_7II: {
            int e1 = p.sig("eps1", -1), e2 = p.sig("eps2", 1);
            int eQ = p.sig("sgn", 1), sg = p.sig("sgnF", 1);
            int e3 = -e1;
            S mu = p.req("mu"), lt = p.req("lamt");
            req_c(nz(mu) && nz(lt), "mu lambda~ != 0");
            S half_eq = scalar_ops<S>::frac(eQ, 2);
            S den = half_eq * lt - mu;
            req_c(nz(den), "nu determined: (eps/2) lambda~ - mu != 0");
            S nu = lt * (half_eq * mu - lt) / den;
            req_c(nz(nu), "nu != 0");
            req_c(nz(lt * lt - nu * nu), "lambda~^2 != nu^2");
            req_c(nz(mu - nu), "mu != nu");
            S fsq = I(e1) * (nu - mu) * nu * (half_eq * mu / lt - one);
            req_c(scalar_ops<S>::sign(fsq) > 0,
                  "(F12)^2 = eps1 (nu - mu) nu (eps mu / (2 lambda~) - 1) > 0");
            S F12 = I(sg) * scalar_ops<S>::sqrt(fsq);
            S rt = I(e1 * e3) * mu * nu / lt;
            S d2 = half_eq * (nu - mu);
            req_c(nz(lt + rt - d2 - d2), "eps1 lambda + eps3 rho != 0");
            S F23 = F12 * I(e3) * lt / nu;
            S lam = I(e1) * (lt - d2);
            S rho = I(e3) * (rt - d2);
            NonUnimodularParams<S> np{false, lam, mu, nu, rho, {e1, e2, e3}};
            auto nu_alg = bracket_nonunimodular(np);
            return assemble(std::move(nu_alg.alg), zero, F12, zero, F23, {zero, zero, d2, zero, zero, d2, zero});
        }
    }
    throw std::logic_error("generate_family: unknown family");
}

/// Lie algebra labels for 3-dimensional algebras.
struct LieLabel {
    enum Kind { Abelian, Heis, E2, E11, So3, So21, Tau2R, Tau3, Tau3Lam, Tau3PrimeLam } kind;
    double lambda = 0;  // for Tau3Lam / Tau3PrimeLam
};

std::string to_string(const LieLabel& l);
bool is_unimodular(const MetricLieAlgebra<double>& alg, double tol = 1e-9);
LieLabel identify_unimodular(const MetricLieAlgebra<double>& alg, double tol = 1e-9);
LieLabel identify_nonunimodular(const MetricLieAlgebra<double>& alg, double tol = 1e-9);
LieLabel identify(const MetricLieAlgebra<double>& alg, double tol = 1e-9);

/// Result of a membership test: whether the scene lies in the family (within
/// tol) and the recovered parameter fit.
struct MembershipFit {
    bool ok = false;
    std::map<std::string, double> params;
};

MembershipFit membership(const Scene<double>& sc, FamilyId id, double tol = 1e-6);

}  // namespace oge
