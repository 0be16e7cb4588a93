#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "cyclotwist/ratfunc.hpp"

namespace cyclotwist {

struct SolverConfig {
    // Hensel precision starts at ell^k with ell^k >= 2^base_bits and doubles
    // until the verified root set stabilizes.
    unsigned long base_bits = 96;
    int max_precision_rounds = 4;
    int max_primes = 25;
    std::size_t max_tuples = 1u << 22;
    std::size_t probe_offset = 0; // start index into the probe sequence
    int max_probe_attempts = 64;
    std::ostream* diagnostics = nullptr; // one line per candidate triple when set
};

struct FiberPoint {
    P1Point value;
    unsigned long multiplicity = 1;
};

struct LevelBound {
    unsigned long b = 1;
    unsigned long p = 0;
};

namespace detail {

inline Int pow_int(const Int& base, unsigned long e) {
    Int r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Int mod_inv(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), Int(a % m).get_mpz_t(), m.get_mpz_t()) == 0)
        throw Error("non-invertible residue");
    return r;
}

inline Int mod_pow(Int base, Int exp, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Coordinates of a (denominator-free) element reduced mod m.
inline std::vector<Int> coords_mod(const CycloElem& a, const Int& m) {
    std::vector<Int> out;
    out.reserve(a.coeffs().size());
    for (const auto& q : a.coeffs()) {
        if (q.get_den() != 1) throw Error("coords_mod: non-integral coordinate");
        Int v = q.get_num() % m;
        if (v < 0) v += m;
        out.push_back(v);
    }
    return out;
}

// Value of the element under zeta |-> z, mod m.
inline Int embed_value_mod(const std::vector<Int>& coords, const Int& z, const Int& m) {
    Int acc = 0;
    for (auto it = coords.rbegin(); it != coords.rend(); ++it) acc = (acc * z + *it) % m;
    return acc;
}

// Solve V x = rhs mod m for a matrix invertible mod the underlying prime.
inline std::vector<Int> solve_mod(std::vector<std::vector<Int>> V, std::vector<Int> rhs, const Int& m) {
    const std::size_t n = V.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && gcd(V[piv][col], m) != 1) ++piv;
        if (piv == n) throw Error("solve_mod: no invertible pivot");
        std::swap(V[piv], V[col]);
        std::swap(rhs[piv], rhs[col]);
        Int inv = mod_inv(V[col][col], m);
        for (std::size_t j = col; j < n; ++j) V[col][j] = V[col][j] * inv % m;
        rhs[col] = rhs[col] * inv % m;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || V[r][col] == 0) continue;
            Int f = V[r][col];
            for (std::size_t j = col; j < n; ++j) {
                V[r][j] = (V[r][j] - f * V[col][j]) % m;
                if (V[r][j] < 0) V[r][j] += m;
            }
            rhs[r] = (rhs[r] - f * rhs[col]) % m;
            if (rhs[r] < 0) rhs[r] += m;
        }
    }
    return rhs;
}

inline Int balanced_lift(Int v, const Int& m) {
    v %= m;
    if (v < 0) v += m;
    if (2 * v > m) v -= m;
    return v;
}

struct PolyModEmbedding {
    Int z;                      // lifted root of x^N - 1
    std::vector<Int> coeffs;    // polynomial image mod m, ascending
    std::vector<Int> roots;     // lifted simple roots
};

inline Int poly_mod_eval(const std::vector<Int>& c, const Int& s, const Int& m) {
    Int acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * s + *it) % m;
    if (acc < 0) acc += m;
    return acc;
}

} // namespace detail

/// All roots of f lying in its coefficient field K_N. Reduction at a split
/// prime ell = 1 (mod N), simple-root Hensel lifting, and balanced-lift
/// reconstruction of integral coordinates; every candidate is verified
/// exactly before being returned, so the output is unconditionally sound.
/// Completeness comes from the monic rescaling trick: roots of the rescaled
/// polynomial are algebraic integers, which survive reduction at every prime.
inline std::vector<CycloElem> rational_roots(const Poly& f, const SolverConfig& cfg = {}) {
    if (f.is_zero()) throw Error("rational_roots: zero polynomial");
    const CycloField& F = f.field();
    if (f.degree() < 1) return {};
    const unsigned long N = F.conductor();
    const std::size_t phi = F.degree();

    Poly g = f.squarefree_part();
    // clear denominators
    Int den_lcm = 1;
    for (const auto& e : g.coeffs())
        for (const auto& q : e.coeffs()) den_lcm = lcm(den_lcm, Int(q.get_den()));
    Poly G0 = g * CycloElem::from_rational(F, Rat(den_lcm));
    // monic rescale: roots of G(u) = A^(d-1) (b G0)(u/A) with A = Norm(lead),
    // b = A / lead are algebraic integers u = A * s.
    std::vector<GaloisAut> full_group;
    for (unsigned long d = N <= 1 ? 0 : 1; d < std::max<unsigned long>(N, 1); ++d) {
        if (N <= 1) { full_group.push_back(GaloisAut{0}); break; }
        if (gcd_ul(d, N) == 1) full_group.push_back(GaloisAut{d});
    }
    CycloElem lead = G0.leading();
    CycloElem norm_elem = relative_norm(lead, full_group);
    if (!norm_elem.is_rational()) throw Error("rational_roots: norm is not rational");
    Rat A_rat = norm_elem.rational_value();
    if (A_rat.get_den() != 1) throw Error("rational_roots: norm is not integral");
    Int A = A_rat.get_num();
    CycloElem b = norm_elem * lead.inverse();
    const long d = G0.degree();
    Rat inv_A = Rat(1) / Rat(A);
    std::vector<CycloElem> Gc;
    for (long i = 0; i <= d; ++i) {
        CycloElem ci = b * G0.coeff(i);
        if (i < d) ci = ci * Rat(detail::pow_int(A, static_cast<unsigned long>(d - 1 - i)));
        else ci = ci * inv_A; // becomes 1
        Gc.push_back(ci);
    }
    Poly G(F, Gc);
    if (!G.is_monic()) throw Error("rational_roots: monic rescale failed");

    // unit exponents index the embeddings zeta |-> z^t
    std::vector<unsigned long> unit_exps;
    if (N <= 1) unit_exps = {0};
    else
        for (unsigned long t = 1; t < N; ++t)
            if (gcd_ul(t, N) == 1) unit_exps.push_back(t);

    std::vector<CycloElem> previous;
    bool have_previous = false;

    int primes_tried = 0;
    for (unsigned long ell = std::max<unsigned long>(N, 2) + 1;; ++ell) {
        if (!is_prime_ul(ell)) continue;
        if (N >= 1 && ell % std::max<unsigned long>(N, 1) != 1 % std::max<unsigned long>(N, 1)) continue;
        if (A % ell == 0) continue;
        if (++primes_tried > cfg.max_primes)
            throw BadPrime("rational_roots: no usable prime within budget");
        const Int L(static_cast<unsigned long>(ell));

        // primitive N-th root of unity mod ell via a generator of F_ell^x
        Int z1 = 1;
        if (N > 1) {
            unsigned long gen = 0;
            for (unsigned long c = 2; c < ell; ++c) {
                bool ok = true;
                unsigned long m = ell - 1;
                for (unsigned long p = 2; p * p <= m; ++p) {
                    if (m % p) continue;
                    if (pow_mod_ul(c, (ell - 1) / p, ell) == 1) { ok = false; break; }
                    while (m % p == 0) m /= p;
                }
                if (ok && m > 1 && pow_mod_ul(c, (ell - 1) / m, ell) == 1) ok = false;
                if (ok) { gen = c; break; }
            }
            if (gen == 0) continue;
            z1 = detail::mod_pow(Int(gen), Int((ell - 1) / N), L);
        }

        // reduce G at each embedding, require a squarefree image with simple roots
        std::vector<std::vector<Int>> Gcoords;
        for (long i = 0; i <= d; ++i) Gcoords.push_back(detail::coords_mod(G.coeff(i), L));
        std::vector<detail::PolyModEmbedding> embeddings;
        bool bad = false, empty_fiber = false;
        for (unsigned long t : unit_exps) {
            detail::PolyModEmbedding e;
            e.z = detail::mod_pow(z1, Int(t), L);
            for (long i = 0; i <= d; ++i)
                e.coeffs.push_back(detail::embed_value_mod(Gcoords[i], e.z, L));
            std::vector<Int> deriv;
            for (long i = 1; i <= d; ++i) deriv.push_back(e.coeffs[i] * i % L);
            for (unsigned long s = 0; s < ell; ++s) {
                if (detail::poly_mod_eval(e.coeffs, Int(s), L) == 0) {
                    if (detail::poly_mod_eval(deriv, Int(s), L) == 0) { bad = true; break; }
                    e.roots.push_back(Int(s));
                }
            }
            if (bad) break;
            if (e.roots.empty()) { empty_fiber = true; break; }
            embeddings.push_back(std::move(e));
        }
        if (bad) continue;          // BadPrime: non-squarefree image, take the next prime
        if (empty_fiber) return {}; // a true root would appear in every embedding

        std::size_t tuples = 1;
        for (const auto& e : embeddings) {
            tuples *= e.roots.size();
            if (tuples > cfg.max_tuples)
                throw Error("rational_roots: candidate tuple budget exceeded");
        }

        unsigned long k = 1;
        {
            Int m(static_cast<unsigned long>(ell));
            while (mpz_sizeinbase(m.get_mpz_t(), 2) < cfg.base_bits) { m *= m; k *= 2; }
        }
        for (int round = 0; round < cfg.max_precision_rounds; ++round, k *= 2) {
            const Int m = detail::pow_int(Int(static_cast<unsigned long>(ell)), k);
            // lift embeddings and their roots to precision m
            std::vector<detail::PolyModEmbedding> lifted = embeddings;
            for (auto& e : lifted) {
                Int mod(static_cast<unsigned long>(ell));
                while (mod < m) {
                    Int next = mod * mod;
                    if (next > m) next = m;
                    if (N > 1) {
                        // Newton step for x^N - 1
                        Int pw = detail::mod_pow(e.z, Int(N - 1), next);
                        Int fx = (pw * e.z - 1) % next;
                        Int dfx = (Int(N) * pw) % next;
                        e.z = (e.z - fx * detail::mod_inv(dfx, next)) % next;
                        if (e.z < 0) e.z += next;
                    }
                    std::vector<Int> coeffs_next;
                    for (long i = 0; i <= d; ++i)
                        coeffs_next.push_back(detail::embed_value_mod(detail::coords_mod(G.coeff(i), next), e.z, next));
                    std::vector<Int> deriv;
                    for (long i = 1; i <= d; ++i) deriv.push_back(coeffs_next[i] * i % next);
                    for (auto& v : e.roots) {
                        Int fv = detail::poly_mod_eval(coeffs_next, v, next);
                        Int dfv = detail::poly_mod_eval(deriv, v, next);
                        v = (v - fv * detail::mod_inv(dfv, next)) % next;
                        if (v < 0) v += next;
                    }
                    e.coeffs = std::move(coeffs_next);
                    mod = next;
                }
            }
            // Vandermonde rows (z_t^i) over the lifted embedding points
            std::vector<std::vector<Int>> V;
            for (const auto& e : lifted) {
                std::vector<Int> row(phi);
                Int p = 1;
                for (std::size_t i = 0; i < phi; ++i) {
                    row[i] = p;
                    p = p * e.z % m;
                }
                V.push_back(std::move(row));
            }
            std::vector<CycloElem> found;
            std::vector<std::size_t> idx(lifted.size(), 0);
            for (;;) {
                std::vector<Int> rhs;
                for (std::size_t j = 0; j < lifted.size(); ++j) rhs.push_back(lifted[j].roots[idx[j]]);
                std::vector<Int> u = detail::solve_mod(V, rhs, m);
                std::vector<Rat> coords(phi);
                for (std::size_t i = 0; i < phi; ++i)
                    coords[i] = Rat(detail::balanced_lift(u[i], m)) / Rat(A);
                for (auto& q : coords) q.canonicalize();
                CycloElem cand(F, std::move(coords));
                bool known = false;
                for (const auto& r : found)
                    if (r == cand) { known = true; break; }
                if (!known && f.evaluate(cand).is_zero()) found.push_back(cand);
                // advance the tuple odometer
                std::size_t j = 0;
                while (j < idx.size() && ++idx[j] == lifted[j].roots.size()) idx[j++] = 0;
                if (j == idx.size()) break;
            }
            std::sort(found.begin(), found.end(),
                      [](const CycloElem& a, const CycloElem& b) { return lex_less(a, b); });
            if (have_previous && found == previous) return found;
            previous = std::move(found);
            have_previous = true;
        }
        throw PrecisionExhausted("rational_roots: root set did not stabilize within the precision budget");
    }
}

/// K_N-rational part of the fiber pi^{-1}(y), with multiplicities; infinity
/// participates whenever the degree bookkeeping demands it.
inline std::vector<FiberPoint> fiber(const RatFunc& pi, const P1Point& y,
                                     const SolverConfig& cfg = {}) {
    if (pi.is_constant()) throw Error("fiber: constant map");
    const CycloField& F = pi.field();
    const long D = pi.degree();
    Poly target(F);
    long inf_mult = 0;
    if (y.infinite) {
        target = pi.den();
        inf_mult = pi.num().degree() - pi.den().degree();
    } else {
        target = pi.num() - pi.den() * y.value;
        inf_mult = D - target.degree();
    }
    std::vector<FiberPoint> out;
    if (target.degree() >= 1) {
        for (const auto& r : rational_roots(target, cfg)) {
            Poly lin(F, {-r, CycloElem::one(F)});
            unsigned long mult = 0;
            Poly rest = target;
            for (;;) {
                auto [q, rem] = divrem(rest, lin);
                if (!rem.is_zero()) break;
                ++mult;
                rest = q;
                if (rest.degree() < 1) break;
            }
            out.push_back({P1Point::at(r), mult});
        }
    }
    if (inf_mult > 0) out.push_back({P1Point::inf(F), static_cast<unsigned long>(inf_mult)});
    return out;
}

/// The complete set of g in PGL_2 over pi's coefficient field with
/// pi_tgt = pi_src . g. Probe three rational points, take fibers of pi_src
/// over the probe values of pi_tgt, interpolate each candidate triple and
/// keep the exact matches. Any solution maps the probes into the fibers, so
/// the candidate sweep is exhaustive.
inline std::vector<Mobius> solve_mobius_equation(const RatFunc& pi_src, const RatFunc& pi_tgt,
                                                 const SolverConfig& cfg = {}) {
    if (pi_src.is_constant() || pi_tgt.is_constant())
        throw Error("solve_mobius_equation: constant map");
    if (pi_src.field() != pi_tgt.field())
        throw Error("solve_mobius_equation: ambient fields differ");
    if (pi_src.degree() != pi_tgt.degree()) return {};
    const CycloField& F = pi_src.field();

    std::array<P1Point, 3> probes;
    std::array<std::vector<FiberPoint>, 3> fibers;
    int found = 0;
    std::size_t index = cfg.probe_offset;
    for (int attempts = 0; found < 3; ++attempts, ++index) {
        if (attempts > cfg.max_probe_attempts)
            throw DegenerateProbes("solve_mobius_equation: probe attempts exhausted");
        CycloElem tau = CycloElem::from_rational(F, nth_probe_rational(index));
        if (pi_tgt.den().evaluate(tau).is_zero()) continue;
        bool dup = false;
        for (int j = 0; j < found; ++j)
            if (probes[j].value == tau) dup = true;
        if (dup) continue;
        P1Point y = evaluate(pi_tgt, P1Point::at(tau));
        auto fib = fiber(pi_src, y, cfg);
        if (fib.empty()) return {}; // no candidate image for this probe: no solutions
        probes[found] = P1Point::at(tau);
        fibers[found] = std::move(fib);
        ++found;
    }

    std::vector<Mobius> out;
    for (const auto& s1 : fibers[0])
        for (const auto& s2 : fibers[1])
            for (const auto& s3 : fibers[2]) {
                if (s1.value == s2.value || s1.value == s3.value || s2.value == s3.value) continue;
                Mobius g = mobius_through(F, probes, {s1.value, s2.value, s3.value});
                bool accepted = compose_mobius(pi_src, g) == pi_tgt;
                if (cfg.diagnostics)
                    *cfg.diagnostics << (accepted ? "accept" : "reject") << " ("
                                     << s1.value.to_string() << ", " << s2.value.to_string() << ", "
                                     << s3.value.to_string() << ")\n";
                if (!accepted) continue;
                bool known = false;
                for (const auto& h : out)
                    if (projectively_equal(g, h)) { known = true; break; }
                if (!known) out.push_back(g.canonical());
            }
    std::sort(out.begin(), out.end(), mobius_lex_less);
    return out;
}

/// Aut(X, pi) over pi's coefficient field: the finite group of Mobius maps
/// commuting over the base. Degree-1 maps are rejected (the stabilizer of a
/// degree-1 map is all of PGL_2).
inline std::vector<Mobius> aut_group(const RatFunc& pi, const SolverConfig& cfg = {}) {
    if (pi.degree() == 1) throw NonconstantDegreeOne();
    if (pi.is_constant()) throw Error("aut_group: constant map");
    std::vector<Mobius> aut = solve_mobius_equation(pi, pi, cfg);
    auto member = [&](const Mobius& g) {
        for (const auto& h : aut)
            if (projectively_equal(g, h)) return true;
        return false;
    };
    if (!member(Mobius::identity(pi.field()))) throw Error("aut_group: identity missing");
    for (const auto& g : aut) {
        if (!member(g.inverse())) throw Error("aut_group: not closed under inverse");
        for (const auto& h : aut)
            if (!member(g * h)) throw Error("aut_group: not closed under product");
    }
    return aut;
}

inline unsigned long mobius_order(const Mobius& g, unsigned long bound) {
    Mobius id = Mobius::identity(g.field());
    Mobius p = g;
    for (unsigned long k = 1; k <= bound; ++k) {
        if (projectively_equal(p, id)) return k;
        p = p * g;
    }
    throw Error("mobius_order: order exceeds the group bound");
}

/// b = lcm of the p-power parts of the element orders; always a power of p.
/// Cocycle enumeration only ever needs conductors up to b * p^n.
inline LevelBound level_bound(const std::vector<Mobius>& aut, unsigned long p) {
    unsigned long b = 1;
    for (const auto& g : aut) {
        unsigned long ord = mobius_order(g, aut.size());
        unsigned long ppart = 1;
        while (ord % p == 0) {
            ord /= p;
            ppart *= p;
        }
        b = std::max(b, ppart); // p-parts are powers of p, so lcm = max
    }
    return {b, p};
}

} // namespace cyclotwist
