#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "oge/atlas.hpp"

namespace oge {

enum class AnsatzKind {
    Diag,        // diagonal L, full variable set
    DiagCase1,   // diagonal, h bounded away from every -alpha_a
    DiagCase3,   // diagonal, alpha1 = alpha2 = -h frozen
    DiagCase4,   // diagonal, alpha1 = alpha2 = alpha3 = -h frozen
    L2,          // L2 algebra frozen per run
    L3Eta,
    L5,
    Deg,         // degenerate non-unimodular (F13 = -F12 structural)
    NonDeg,      // non-degenerate non-unimodular (F13 = 0 structural)
};

std::string ansatz_name(AnsatzKind k);
std::optional<AnsatzKind> ansatz_from_name(const std::string& s);

/// Search configuration: a canonical algebra family with fixed signs, the
/// free variables with sampling boxes, and optional frozen values.
struct Ansatz {
    AnsatzKind kind = AnsatzKind::Diag;
    std::array<int, 3> eps{1, 1, 1};
    int eta = 1;                            // L3 only
    std::map<std::string, double> frozen;   // by variable name
    double box_lo = -5.0, box_hi = 5.0;
    double f_margin = 0.05;   // reject converged points with max|F| below this
    double wall_margin = 0.1; // case-I separation and similar strict walls

    std::vector<std::string> variables() const;
};

/// Builds the scene at a parameter vector; returns false when the point is
/// outside the ansatz domain (e.g. lambda + rho = 0).
bool scene_from_point(const Ansatz& a, const std::vector<double>& x, Scene<double>& out,
                      std::string* why = nullptr);

/// Flattened Einstein residual (length 2n^2+2n = 24) at a parameter vector.
std::vector<double> residual_fn(const Ansatz& a, const std::vector<double>& x);

struct Root {
    std::vector<double> x;
    double residual = 0;
    std::string family;                     // matched atlas family, or empty
    std::map<std::string, double> fit;
};

struct SolveReport {
    Ansatz ansatz;
    int starts = 0;
    uint64_t seed = 0;
    double tol = 0;
    int converged = 0;       // points meeting tol before constraint filtering
    int rejected_wall = 0;   // converged points discarded near a strict wall
    int matched = 0;         // roots matched to an atlas family
    std::vector<Root> roots; // deduplicated, sorted
};

/// Deterministic multistart Levenberg-Marquardt least squares over the
/// ansatz box. Roots are deduplicated by parameter distance after quotienting
/// the (F, delta_0) sign symmetry.
SolveReport solve(const Ansatz& a, int starts, uint64_t seed, double tol = 1e-10);

}  // namespace oge
