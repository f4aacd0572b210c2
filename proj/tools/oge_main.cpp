#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "oge/scene_io.hpp"
#include "oge/solver.hpp"

namespace {

using namespace oge;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

std::string pick_backend(const std::string& flag) {
    if (const char* env = std::getenv("OGE_BACKEND")) return env;
    return flag;
}

// "a=1;b=-2,3;c=0.5" -> ordered (key, value-string) pairs; ';' or newline
// separates entries
std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& s) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::runtime_error("expected key=value in '" + item + "'");
        out.push_back({item.substr(0, eq), item.substr(eq + 1)});
    }
    return out;
}

template <class S>
S scalar_from_text(const std::string& t) {
    nlohmann::json j = nlohmann::json::parse(t);
    if constexpr (std::is_same_v<S, double>)
        return j.get<double>();
    else
        return QSqrt(rat_from_json(j));
}

template <class S>
int do_verify(const std::string& path, double tol) {
    Scene<S> sc = parse_scene<S>(slurp(path));
    bool yes = is_einstein(sc, tol);
    EinsteinResidual<S> r = einstein_residual(sc);
    std::cout << (yes ? "einstein" : "not-einstein") << " norm=" << r.norm() << "\n";
    return yes ? 0 : 1;
}

template <class S>
int do_residual(const std::string& path, double tol, const std::string& fmt,
                const std::string& backend, bool ricci) {
    Scene<S> sc = parse_scene<S>(slurp(path));
    EinsteinResidual<S> r = einstein_residual(sc);
    if (fmt == "csv")
        std::cout << residual_csv(r);
    else
        std::cout << residual_report(sc, r, backend, tol, ricci).dump(2) << "\n";
    return 0;
}

template <class S>
int do_family(const std::string& idname, const std::string& params, const std::string& emit,
              double tol) {
    auto id = family_from_name(idname);
    if (!id) throw std::runtime_error("unknown family '" + idname + "'");
    FamilyParams<S> p;
    for (auto& [k, v] : parse_kv(params)) {
        if (k == "eps") {
            // eps=1,1,-1 shorthand
            std::istringstream ss(v);
            std::string tok;
            int idx = 1;
            while (std::getline(ss, tok, ',')) {
                p.v["eps" + std::to_string(idx++)] = scalar_from_text<S>(tok);
            }
        } else {
            p.v[k] = scalar_from_text<S>(v);
        }
    }
    Scene<S> sc = generate_family<S>(*id, p);
    EinsteinResidual<S> r = einstein_residual(sc);
    bool ok = scalar_ops<S>::exact ? r.exactly_zero() : r.norm() <= tol;
    if (!ok) throw std::runtime_error("internal: generated scene has residual norm " +
                                      std::to_string(r.norm()));
    std::string text = emit_scene(sc).dump(2) + "\n";
    if (emit.empty())
        std::cout << text;
    else
        spit(emit, text);
    return 0;
}

int do_identify(const std::string& path) {
    Scene<double> sc = parse_scene<double>(slurp(path));
    std::cout << to_string(identify(sc.alg)) << "\n";
    return 0;
}

template <class S>
int do_gauge(const std::string& path, const std::string& bspec, const std::string& aspec,
             const std::string& emit) {
    Scene<S> sc = parse_scene<S>(slurp(path));
    const int n = sc.n();
    KForm<S> b(n, 2), A(n, 1);
    for (auto& [k, v] : parse_kv(bspec)) {
        if (k.size() != 2) throw std::runtime_error("b keys are index pairs like 12");
        b.set({k[0] - '0', k[1] - '0'}, scalar_from_text<S>(v));
    }
    for (auto& [k, v] : parse_kv(aspec)) {
        if (k.size() != 1) throw std::runtime_error("A keys are single indices like 1");
        A.set({k[0] - '0'}, scalar_from_text<S>(v));
    }
    auto [Ht, Ft] = gauge_reduce(sc.alg, sc.twist.H, sc.twist.F, b, A);
    sc.twist.H = Ht;
    sc.twist.F = Ft;
    std::string text = emit_scene(sc).dump(2) + "\n";
    if (emit.empty())
        std::cout << text;
    else
        spit(emit, text);
    return 0;
}

int do_search(const std::string& name, const std::string& epsspec, int eta,
              const std::string& freeze, int starts, uint64_t seed, double tol,
              const std::string& out) {
    auto kind = ansatz_from_name(name);
    if (!kind) throw std::runtime_error("unknown ansatz '" + name + "'");
    Ansatz a;
    a.kind = *kind;
    a.eta = eta;
    {
        std::istringstream ss(epsspec);
        std::string tok;
        int idx = 0;
        while (std::getline(ss, tok, ',') && idx < 3) a.eps[idx++] = std::stoi(tok);
    }
    for (auto& [k, v] : parse_kv(freeze)) a.frozen[k] = std::stod(v);
    SolveReport rep = solve(a, starts, seed, tol);
    ordered_json doc;
    doc["ansatz"] = ansatz_name(a.kind);
    doc["eps"] = {a.eps[0], a.eps[1], a.eps[2]};
    if (a.kind == AnsatzKind::L3Eta) doc["eta"] = a.eta;
    doc["frozen"] = a.frozen;
    doc["starts"] = rep.starts;
    doc["seed"] = rep.seed;
    doc["tol"] = rep.tol;
    doc["converged"] = rep.converged;
    doc["rejected_wall"] = rep.rejected_wall;
    doc["matched"] = rep.matched;
    ordered_json roots = ordered_json::array();
    auto vars = a.variables();
    for (const auto& root : rep.roots) {
        ordered_json jr;
        ordered_json x;
        for (size_t i = 0; i < vars.size(); ++i) x[vars[i]] = root.x[i];
        jr["x"] = std::move(x);
        jr["residual"] = root.residual;
        jr["family"] = root.family;
        jr["fit"] = root.fit;
        roots.push_back(std::move(jr));
    }
    doc["roots"] = std::move(roots);
    std::string text = doc.dump(2) + "\n";
    if (out.empty())
        std::cout << text;
    else
        spit(out, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"odd generalized Einstein metrics on Lie groups: verification, family atlas, search"};
    app.require_subcommand(1);

    std::string scene_path, backend = "float", fmt = "json", params, emitp, bspec, aspec;
    std::string ansatz = "diag", epsspec = "1,1,1", freeze, outp, famname;
    double tol = 1e-10;
    int starts = 100, eta = 1;
    uint64_t seed = 1;
    bool with_ricci = false;

    auto add_backend = [&](CLI::App* c) {
        c->add_option("--backend", backend, "float|rational (env OGE_BACKEND overrides)")
            ->check(CLI::IsMember({"float", "rational"}));
    };

    auto* verify = app.add_subcommand("verify", "check the Einstein condition for a scene file");
    verify->add_option("scene", scene_path)->required();
    verify->add_option("--tol", tol);
    add_backend(verify);

    auto* residual = app.add_subcommand("residual", "print the residual report for a scene");
    residual->add_option("scene", scene_path)->required();
    residual->add_option("--tol", tol);
    residual->add_option("--format", fmt)->check(CLI::IsMember({"json", "csv"}));
    residual->add_flag("--ricci", with_ricci, "include the Ricci component dump");
    add_backend(residual);

    auto* family = app.add_subcommand("family", "generate a classified solution family instance");
    family->add_option("id", famname)->required();
    family->add_option("--params", params, "key=value list, e.g. \"eps=1,1,1;a2=1;F13=1\"");
    family->add_option("--emit", emitp, "write the scene JSON to this path");
    family->add_option("--tol", tol);
    add_backend(family);

    auto* identify = app.add_subcommand("identify", "name the underlying Lie algebra of a scene");
    identify->add_option("scene", scene_path)->required();

    auto* search = app.add_subcommand("search", "multistart root search for Einstein metrics");
    search->add_option("--ansatz", ansatz, "diag|diag-case1|diag-case3|diag-case4|l2|l3|l5|deg|nondeg");
    search->add_option("--eps", epsspec, "frame signs, e.g. -1,-1,1");
    search->add_option("--eta", eta)->check(CLI::IsMember({-1, 1}));
    search->add_option("--freeze", freeze, "frozen variables, e.g. \"alpha=1;beta=2\"");
    search->add_option("--starts", starts);
    search->add_option("--seed", seed);
    search->add_option("--tol", tol);
    search->add_option("--out", outp, "write the report JSON to this path");

    auto* gauge = app.add_subcommand("gauge", "apply a (b, A) gauge transformation to a scene");
    gauge->add_option("scene", scene_path)->required();
    gauge->add_option("--b", bspec, "2-form components, e.g. \"12=1;13=-2\"");
    gauge->add_option("--A", aspec, "1-form components, e.g. \"1=0.5\"");
    gauge->add_option("--emit", emitp);
    add_backend(gauge);

    CLI11_PARSE(app, argc, argv);

    try {
        bool rational = pick_backend(backend) == "rational";
        if (verify->parsed()) {
            if (tol < 0) throw std::runtime_error("tol must be nonnegative");
            return rational ? do_verify<QSqrt>(scene_path, tol) : do_verify<double>(scene_path, tol);
        }
        if (residual->parsed())
            return rational ? do_residual<QSqrt>(scene_path, tol, fmt, "rational", with_ricci)
                            : do_residual<double>(scene_path, tol, fmt, "float", with_ricci);
        if (family->parsed())
            return rational ? do_family<QSqrt>(famname, params, emitp, tol)
                            : do_family<double>(famname, params, emitp, tol);
        if (identify->parsed()) return do_identify(scene_path);
        if (search->parsed())
            return do_search(ansatz, epsspec, eta, freeze, starts, seed, tol, outp);
        if (gauge->parsed())
            return rational ? do_gauge<QSqrt>(scene_path, bspec, aspec, emitp)
                            : do_gauge<double>(scene_path, bspec, aspec, emitp);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
