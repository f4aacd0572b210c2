#include "oge/scene_io.hpp"

#include <set>
#include <sstream>

namespace oge {

using json = nlohmann::json;

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_number_unsigned()) return Rat((unsigned long long)j.get<unsigned long long>());
    if (!j.is_number_float()) throw std::runtime_error("expected a number literal");
    // nlohmann serializes doubles with the shortest round-trip decimal, which
    // recovers the literal a user typed (0.5, -1.25, 1e-3, ...)
    std::string s = j.dump();
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    Int mant = 0;
    long frac_digits = 0, exp10 = 0;
    for (; i < s.size() && std::isdigit((unsigned char)s[i]); ++i) mant = mant * 10 + (s[i] - '0');
    if (i < s.size() && s[i] == '.') {
        ++i;
        for (; i < s.size() && std::isdigit((unsigned char)s[i]); ++i) {
            mant = mant * 10 + (s[i] - '0');
            ++frac_digits;
        }
    }
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = s[i++] == '-';
        long e = 0;
        for (; i < s.size() && std::isdigit((unsigned char)s[i]); ++i) e = e * 10 + (s[i] - '0');
        exp10 = eneg ? -e : e;
    }
    Rat r(mant);
    long net = exp10 - frac_digits;
    Int pow10 = 1;
    for (long t = 0; t < std::abs(net); ++t) pow10 *= 10;
    if (net >= 0) r *= Rat(pow10);
    else r /= Rat(pow10);
    return neg ? -r : r;
}

namespace {

template <class S>
S scalar_from_json(const json& j, const std::string& field);

template <>
double scalar_from_json<double>(const json& j, const std::string& field) {
    if (j.is_number()) return j.get<double>();
    if (j.is_object() && j.contains("sqrt") && j.contains("coef")) {
        double m = j.at("sqrt").get<double>();
        if (m < 0) throw SceneError(field, "sqrt radicand must be nonnegative");
        double v = j.at("coef").get<double>() * std::sqrt(m);
        if (j.contains("plus")) v += j.at("plus").get<double>();
        return v;
    }
    if (j.is_object() && j.contains("num") && j.contains("den"))
        return j.at("num").get<double>() / j.at("den").get<double>();
    throw SceneError(field, "expected a number, {sqrt, coef} or {num, den}");
}

Rat rat_value(const json& j, const std::string& field) {
    if (j.is_number()) return rat_from_json(j);
    if (j.is_object() && j.contains("num") && j.contains("den")) {
        Rat den = rat_from_json(j.at("den"));
        if (den == 0) throw SceneError(field, "zero denominator");
        return rat_from_json(j.at("num")) / den;
    }
    throw SceneError(field, "expected a rational literal");
}

template <>
QSqrt scalar_from_json<QSqrt>(const json& j, const std::string& field) {
    if (j.is_object() && j.contains("sqrt") && j.contains("coef")) {
        Rat m = rat_value(j.at("sqrt"), field);
        if (m < 0) throw SceneError(field, "sqrt radicand must be nonnegative");
        QSqrt v = QSqrt(rat_value(j.at("coef"), field)) * QSqrt::sqrt_of(m);
        if (j.contains("plus")) v = v + QSqrt(rat_value(j.at("plus"), field));
        return v;
    }
    return QSqrt(rat_value(j, field));
}

ordered_json rat_to_json(const Rat& r) {
    // integers and decimal-exact values round-trip as plain numbers; anything
    // else is emitted as an exact {num, den} pair
    if (boost::multiprecision::denominator(r) == 1) {
        Int n = boost::multiprecision::numerator(r);
        if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
            return ordered_json(n.convert_to<long long>());
    }
    double d = to_double(r);
    ordered_json cand(d);
    try {
        if (rat_from_json(json(d)) == r) return cand;
    } catch (...) {
    }
    ordered_json o;
    o["num"] = boost::multiprecision::numerator(r).str();
    o["den"] = boost::multiprecision::denominator(r).str();
    return o;
}

template <class S>
ordered_json scalar_to_json(const S& v);

template <>
ordered_json scalar_to_json<double>(const double& v) {
    return ordered_json(v);
}

template <>
ordered_json scalar_to_json<QSqrt>(const QSqrt& v) {
    if (v.is_rational()) return rat_to_json(v.rat_part());
    ordered_json o;
    o["coef"] = rat_to_json(v.sqrt_coef());
    o["sqrt"] = ordered_json(v.radicand().convert_to<long long>());
    if (v.rat_part() != 0) o["plus"] = rat_to_json(v.rat_part());
    return o;
}

int index_in_range(const json& j, int lo, int hi, const std::string& field) {
    if (!j.is_number_integer())
        throw SceneError(field, "index must be an integer");
    int v = j.get<int>();
    if (v < lo || v > hi)
        throw SceneError(field, "index " + std::to_string(v) + " out of range " +
                                    std::to_string(lo) + ".." + std::to_string(hi));
    return v;
}

}  // namespace

template <class S>
Scene<S> parse_scene(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SceneError("(document)", e.what());
    }
    if (!doc.is_object()) throw SceneError("(document)", "top level must be an object");
    if (!doc.contains("n")) throw SceneError("n", "missing");
    int n = index_in_range(doc.at("n"), 2, 16, "n");
    if (!doc.contains("epsilon")) throw SceneError("epsilon", "missing");
    const json& je = doc.at("epsilon");
    if (!je.is_array() || int(je.size()) != n)
        throw SceneError("epsilon", "must be an array of length n");
    std::vector<int> eps;
    for (const auto& e : je) {
        if (!e.is_number_integer() || (e.get<int>() != 1 && e.get<int>() != -1))
            throw SceneError("epsilon", "entries must be +1 or -1");
        eps.push_back(e.get<int>());
    }
    auto [frame, eta] = build_frame(n, eps);
    (void)eta;

    Scene<S> sc;
    sc.alg.frame = frame;
    sc.alg.k = Tensor3<S>(n + 1);
    sc.twist.H = KForm<S>(n, 3);
    sc.twist.F = KForm<S>(n, 2);

    std::set<std::array<int, 3>> seen_k, seen_h;
    std::set<std::array<int, 2>> seen_f;
    if (doc.contains("k")) {
        if (!doc.at("k").is_array()) throw SceneError("k", "must be an array of [a,b,c,value]");
        int row = 0;
        for (const auto& ent : doc.at("k")) {
            std::string fld = "k[" + std::to_string(row++) + "]";
            if (!ent.is_array() || ent.size() != 4) throw SceneError(fld, "expected [a,b,c,value]");
            int a = index_in_range(ent[0], 1, n, fld);
            int b = index_in_range(ent[1], 1, n, fld);
            int c = index_in_range(ent[2], 1, n, fld);
            if (a == b) throw SceneError(fld, "k is antisymmetric in (a,b); a == b entries vanish");
            std::array<int, 3> key{std::min(a, b), std::max(a, b), c};
            if (!seen_k.insert(key).second) throw SceneError(fld, "duplicate index triple");
            S v = scalar_from_json<S>(ent[3], fld);
            sc.alg.k(a, b, c) = v;
            sc.alg.k(b, a, c) = -v;
        }
    }
    if (doc.contains("H")) {
        if (!doc.at("H").is_array()) throw SceneError("H", "must be an array of [a,b,c,value]");
        int row = 0;
        for (const auto& ent : doc.at("H")) {
            std::string fld = "H[" + std::to_string(row++) + "]";
            if (!ent.is_array() || ent.size() != 4) throw SceneError(fld, "expected [a,b,c,value]");
            int a = index_in_range(ent[0], 1, n, fld);
            int b = index_in_range(ent[1], 1, n, fld);
            int c = index_in_range(ent[2], 1, n, fld);
            if (a == b || a == c || b == c) throw SceneError(fld, "repeated index in a 3-form entry");
            std::array<int, 3> key{a, b, c};
            std::sort(key.begin(), key.end());
            if (!seen_h.insert(key).second) throw SceneError(fld, "duplicate index triple");
            sc.twist.H.set({a, b, c}, scalar_from_json<S>(ent[3], fld));
        }
    }
    if (doc.contains("F")) {
        if (!doc.at("F").is_array()) throw SceneError("F", "must be an array of [a,b,value]");
        int row = 0;
        for (const auto& ent : doc.at("F")) {
            std::string fld = "F[" + std::to_string(row++) + "]";
            if (!ent.is_array() || ent.size() != 3) throw SceneError(fld, "expected [a,b,value]");
            int a = index_in_range(ent[0], 1, n, fld);
            int b = index_in_range(ent[1], 1, n, fld);
            if (a == b) throw SceneError(fld, "repeated index in a 2-form entry");
            std::array<int, 2> key{std::min(a, b), std::max(a, b)};
            if (!seen_f.insert(key).second) throw SceneError(fld, "duplicate index pair");
            sc.twist.F.set({a, b}, scalar_from_json<S>(ent[2], fld));
        }
    }
    sc.delta.assign(2 * n + 1, S());
    if (doc.contains("delta")) {
        const json& jd = doc.at("delta");
        if (!jd.is_array() || int(jd.size()) != 2 * n + 1)
            throw SceneError("delta", "must be an array of length 2n+1 (index 0 = delta_0)");
        for (int i = 0; i <= 2 * n; ++i)
            sc.delta[i] = scalar_from_json<S>(jd[i], "delta[" + std::to_string(i) + "]");
    }
    return sc;
}

template <class S>
ordered_json emit_scene(const Scene<S>& sc) {
    const int n = sc.n();
    ordered_json doc;
    doc["n"] = n;
    doc["epsilon"] = ordered_json::array();
    for (int a = 1; a <= n; ++a) doc["epsilon"].push_back(sc.alg.frame.epsilon[a]);
    ordered_json k = ordered_json::array(), H = ordered_json::array(), F = ordered_json::array();
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            for (int c = 1; c <= n; ++c)
                if (!scalar_ops<S>::is_zero(sc.alg.k(a, b, c), 0.0))
                    k.push_back(ordered_json::array({a, b, c, scalar_to_json<S>(sc.alg.k(a, b, c))}));
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) {
            for (int c = b + 1; c <= n; ++c) {
                S v = sc.twist.Hc(a, b, c);
                if (!scalar_ops<S>::is_zero(v, 0.0))
                    H.push_back(ordered_json::array({a, b, c, scalar_to_json<S>(v)}));
            }
            S v = sc.twist.Fc(a, b);
            if (!scalar_ops<S>::is_zero(v, 0.0))
                F.push_back(ordered_json::array({a, b, scalar_to_json<S>(v)}));
        }
    doc["k"] = std::move(k);
    doc["H"] = std::move(H);
    doc["F"] = std::move(F);
    doc["delta"] = ordered_json::array();
    for (const auto& d : sc.delta) doc["delta"].push_back(scalar_to_json<S>(d));
    return doc;
}

template <class S>
ordered_json residual_report(const Scene<S>& sc, const EinsteinResidual<S>& r,
                             const std::string& backend, double tol, bool with_ricci) {
    const int n = r.n;
    ordered_json doc;
    doc["backend"] = backend;
    doc["tolerance"] = tol;
    doc["norm"] = r.norm();
    bool ok = scalar_ops<S>::exact ? r.exactly_zero() : r.norm() <= tol;
    doc["verdict"] = ok ? "einstein" : "not-einstein";
    ordered_json groups;
    ordered_json g1 = ordered_json::array(), g2 = ordered_json::array();
    ordered_json g3 = ordered_json::array(), g4 = ordered_json::array();
    for (int i = n + 1; i <= 2 * n; ++i)
        for (int a = 1; a <= n; ++a) {
            g1.push_back({{"i", i}, {"a", a}, {"value", scalar_ops<S>::value(r.g1(i, a))}});
            g4.push_back({{"i", i}, {"a", a}, {"value", scalar_ops<S>::value(r.g4(i, a))}});
        }
    for (int i = n + 1; i <= 2 * n; ++i)
        g2.push_back({{"i", i}, {"a", 0}, {"value", scalar_ops<S>::value(r.g2(i))}});
    for (int a = 1; a <= n; ++a)
        g3.push_back({{"i", 0}, {"a", a}, {"value", scalar_ops<S>::value(r.g3(a))}});
    groups["G1"] = std::move(g1);
    groups["G2"] = std::move(g2);
    groups["G3"] = std::move(g3);
    groups["G4"] = std::move(g4);
    doc["groups"] = std::move(groups);
    if (with_ricci) {
        DorfmanTensor<S> D = dorfman_coefficients(sc.alg, sc.twist);
        RicciComponents<S> ric = ricci_closed_form(D, sc.twist, sc.delta);
        ordered_json rp = ordered_json::array(), rm = ordered_json::array();
        for (int i = n + 1; i <= 2 * n; ++i)
            for (int a = 0; a <= n; ++a)
                rp.push_back({{"i", i}, {"a", a}, {"value", scalar_ops<S>::value(ric.rp(i, a))}});
        for (int a = 0; a <= n; ++a)
            for (int i = n + 1; i <= 2 * n; ++i)
                rm.push_back({{"a", a}, {"i", i}, {"value", scalar_ops<S>::value(ric.rm(a, i))}});
        doc["ricci"] = {{"plus", std::move(rp)}, {"minus", std::move(rm)}};
    }
    return doc;
}

template <class S>
std::string residual_csv(const EinsteinResidual<S>& r) {
    const int n = r.n;
    std::ostringstream os;
    os << "group,i,a,value\n";
    os.precision(17);
    for (int i = n + 1; i <= 2 * n; ++i)
        for (int a = 1; a <= n; ++a)
            os << "G1," << i << "," << a << "," << scalar_ops<S>::value(r.g1(i, a)) << "\n";
    for (int i = n + 1; i <= 2 * n; ++i)
        os << "G2," << i << ",0," << scalar_ops<S>::value(r.g2(i)) << "\n";
    for (int a = 1; a <= n; ++a)
        os << "G3,0," << a << "," << scalar_ops<S>::value(r.g3(a)) << "\n";
    for (int i = n + 1; i <= 2 * n; ++i)
        for (int a = 1; a <= n; ++a)
            os << "G4," << i << "," << a << "," << scalar_ops<S>::value(r.g4(i, a)) << "\n";
    return os.str();
}

template Scene<double> parse_scene<double>(const std::string&);
template Scene<QSqrt> parse_scene<QSqrt>(const std::string&);
template ordered_json emit_scene<double>(const Scene<double>&);
template ordered_json emit_scene<QSqrt>(const Scene<QSqrt>&);
template ordered_json residual_report<double>(const Scene<double>&, const EinsteinResidual<double>&,
                                              const std::string&, double, bool);
template ordered_json residual_report<QSqrt>(const Scene<QSqrt>&, const EinsteinResidual<QSqrt>&,
                                             const std::string&, double, bool);
template std::string residual_csv<double>(const EinsteinResidual<double>&);
template std::string residual_csv<QSqrt>(const EinsteinResidual<QSqrt>&);

}  // namespace oge
