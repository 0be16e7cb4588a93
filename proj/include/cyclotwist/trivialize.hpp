#pragma once

#include <optional>
#include <string>

#include "cyclotwist/conic.hpp"

namespace cyclotwist {

enum class TrivializeRoute { Auto, Conic, CyclicNorm };

inline const char* route_name(TrivializeRoute r) {
    switch (r) {
        case TrivializeRoute::Conic: return "conic";
        case TrivializeRoute::CyclicNorm: return "cyclic-norm";
        default: return "auto";
    }
}

/// Outcome of a trivialization attempt. `trivializer` satisfies
/// zeta(sigma) = A^-1 sigma(A) when set. Otherwise `conic` carries the
/// obstruction: over Q its emptiness is decided (status "obstruction"),
/// over larger fields a fruitless bounded search is only "inconclusive".
struct TrivializeOutcome {
    std::optional<Mobius> trivializer;
    std::optional<ConicForm> conic;
    std::string insolubility_witness;
    std::string status; // "trivialized" | "obstruction" | "inconclusive"
    std::string route;  // "trivial" | "cyclic-norm" | "conic" | "cyclic-norm,conic"

    bool trivialized() const { return trivializer.has_value(); }
};

struct TrivializeConfig {
    TrivializeRoute route = TrivializeRoute::Auto;
    std::size_t norm_budget = 20000;
    std::size_t point_budget = 200000;
};

namespace detail {

inline std::optional<Mobius> cyclic_norm_route(const Cocycle& z, std::size_t norm_budget) {
    const GalGroup& G = z.group;
    auto [lift, mu] = lift_and_mu(z);
    unsigned long s = G.gens[0].first;
    CycloElem prod = CycloElem::one(G.field);
    for (unsigned long j = 0; j < G.size(); ++j) prod = prod * mu.at(G.pow(s, j), s);
    CycloElem target = prod.inverse();
    for (unsigned long g : G.fixed.generators)
        if (apply_aut(GaloisAut{g}, target) != target)
            throw Error("cyclic-norm route: mu product is not K-rational");
    auto a_prime = solve_norm_equation(target, G, norm_budget);
    if (!a_prime) return std::nullopt;
    auto f = preu_f(mu, G, *a_prime);
    MatrixCocycle phi;
    phi.group = G;
    for (unsigned long d : G.elements) phi.values.emplace(d, lift.at(d) * f.at(d).inverse());
    phi.validate();
    SqMat A2 = hilbert90(phi);
    Mobius A = mat_to_mobius(A2).canonical();
    Mobius Ainv = A.inverse();
    for (unsigned long d : G.elements)
        if (!projectively_equal(z.at(d), Ainv * apply_aut(GaloisAut{d}, A)))
            throw Error("cyclic-norm route: trivializer postcondition failed");
    return A;
}

} // namespace detail

/// Decide whether zeta is a coboundary and produce A with
/// zeta(sigma) = A^-1 sigma(A), exactly verified. Route selection: the
/// cyclic-norm route (lift -> mu -> norm equation -> Preu -> Hilbert 90)
/// applies to cyclic Galois groups and is inconclusive when the bounded norm
/// search fails; the conic route applies always and is a genuine decision
/// procedure over K = Q.
inline TrivializeOutcome trivialize_cocycle(const Cocycle& z, const TrivializeConfig& cfg = {}) {
    z.validate();
    TrivializeOutcome out;
    const GalGroup& G = z.group;

    if (z.is_trivial()) {
        out.trivializer = Mobius::identity(G.field);
        out.status = "trivialized";
        out.route = "trivial";
        return out;
    }

    bool want_norm = cfg.route == TrivializeRoute::CyclicNorm ||
                     (cfg.route == TrivializeRoute::Auto && G.is_cyclic());
    if (want_norm && !G.is_cyclic())
        throw Error("cyclic-norm route requested for a non-cyclic Galois group");

    if (want_norm) {
        auto A = detail::cyclic_norm_route(z, cfg.norm_budget);
        if (A) {
            out.trivializer = std::move(A);
            out.status = "trivialized";
            out.route = "cyclic-norm";
            return out;
        }
        if (cfg.route == TrivializeRoute::CyclicNorm) {
            out.status = "inconclusive";
            out.route = "cyclic-norm";
            return out; // norm equation unsolved within budget
        }
        out.route = "cyclic-norm,";
    }

    auto [C, M] = conic_from_cocycle(z);
    out.conic = C;
    out.route += "conic";
    if (G.fixed.is_Q()) {
        QPointResult qr = has_point_over_Q(C);
        if (!qr.solvable()) {
            out.status = "obstruction";
            out.insolubility_witness = qr.insolubility_witness;
            return out;
        }
        out.trivializer = trivializer_from_point(M, *qr.point, z);
        out.status = "trivialized";
        return out;
    }
    auto P = search_point_over_K(C, cfg.point_budget);
    if (!P) {
        out.status = "inconclusive";
        return out;
    }
    out.trivializer = trivializer_from_point(M, *P, z);
    out.status = "trivialized";
    return out;
}

} // namespace cyclotwist
