#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cyclotwist/solver.hpp"

namespace cyclotwist {

/// Small square matrices over K_M (n = 2 or 3), the GL_n side of the descent
/// computations. Unlike Mobius, equality is strict, not projective.
class SqMat {
public:
    SqMat() = default;
    SqMat(CycloField f, std::size_t n) : f_(std::move(f)), n_(n), e_(n * n, CycloElem::zero(f_)) {}
    SqMat(CycloField f, std::size_t n, std::vector<CycloElem> entries)
        : f_(std::move(f)), n_(n), e_(std::move(entries)) {
        if (e_.size() != n_ * n_) throw Error("SqMat: wrong entry count");
    }

    static SqMat identity(const CycloField& f, std::size_t n) {
        SqMat m(f, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = CycloElem::one(f);
        return m;
    }

    const CycloField& field() const { return f_; }
    std::size_t dim() const { return n_; }
    CycloElem& at(std::size_t r, std::size_t c) { return e_[r * n_ + c]; }
    const CycloElem& at(std::size_t r, std::size_t c) const { return e_[r * n_ + c]; }

    friend bool operator==(const SqMat& a, const SqMat& b) {
        return a.n_ == b.n_ && a.e_ == b.e_;
    }
    friend bool operator!=(const SqMat& a, const SqMat& b) { return !(a == b); }

    friend SqMat operator*(const SqMat& a, const SqMat& b) {
        if (a.n_ != b.n_) throw Error("SqMat: size mismatch");
        SqMat r(a.f_, a.n_);
        for (std::size_t i = 0; i < a.n_; ++i)
            for (std::size_t k = 0; k < a.n_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < a.n_; ++j)
                    r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
            }
        return r;
    }
    friend SqMat operator*(const SqMat& a, const CycloElem& s) {
        SqMat r = a;
        for (auto& x : r.e_) x = x * s;
        return r;
    }

    std::vector<CycloElem> apply(const std::vector<CycloElem>& v) const {
        if (v.size() != n_) throw Error("SqMat: vector size mismatch");
        std::vector<CycloElem> out(n_, CycloElem::zero(f_));
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (!at(i, j).is_zero()) out[i] = out[i] + at(i, j) * v[j];
        return out;
    }

    CycloElem det() const {
        if (n_ == 1) return at(0, 0);
        if (n_ == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
        if (n_ == 3) {
            CycloElem d = at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1));
            d = d - at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0));
            d = d + at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
            return d;
        }
        throw Error("SqMat: determinant only for n <= 3");
    }

    SqMat transpose() const {
        SqMat r(f_, n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    SqMat inverse() const {
        CycloElem d = det();
        if (d.is_zero()) throw SingularMatrix();
        CycloElem di = d.inverse();
        SqMat r(f_, n_);
        if (n_ == 1) {
            r.at(0, 0) = di;
        } else if (n_ == 2) {
            r.at(0, 0) = at(1, 1) * di;
            r.at(0, 1) = -at(0, 1) * di;
            r.at(1, 0) = -at(1, 0) * di;
            r.at(1, 1) = at(0, 0) * di;
        } else if (n_ == 3) {
            auto cof = [&](std::size_t i, std::size_t j) {
                std::size_t r0 = (i + 1) % 3, r1 = (i + 2) % 3;
                std::size_t c0 = (j + 1) % 3, c1 = (j + 2) % 3;
                return at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0);
            };
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) r.at(j, i) = cof(i, j) * di;
        } else {
            throw Error("SqMat: inverse only for n <= 3");
        }
        return r;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < n_; ++i) {
            s += i ? "; " : "";
            for (std::size_t j = 0; j < n_; ++j) s += (j ? ", " : "") + at(i, j).to_string();
        }
        return s + "]";
    }

private:
    CycloField f_;
    std::size_t n_ = 0;
    std::vector<CycloElem> e_;
};

inline SqMat apply_aut(const GaloisAut& sigma, const SqMat& m) {
    SqMat r = m;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            r.at(i, j) = apply_aut(sigma, m.at(i, j));
    return r;
}

inline SqMat mobius_to_mat(const Mobius& g) {
    return SqMat(g.field(), 2, {g.a(), g.b(), g.c(), g.d()});
}

inline Mobius mat_to_mobius(const SqMat& m) {
    if (m.dim() != 2) throw Error("mat_to_mobius: not 2x2");
    return Mobius(m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1));
}

/// Gal(K_M/K) realized concretely: the subgroup of (Z/MZ)^x of units d whose
/// sigma_d fixes K pointwise, with an independent generator basis and normal
/// forms for every element.
struct GalGroup {
    CycloField field;                   // K_M
    SubfieldSpec fixed;                 // K presented inside K_M
    std::vector<unsigned long> elements;
    std::vector<std::pair<unsigned long, unsigned long>> gens; // (unit, order)
    std::map<unsigned long, std::vector<unsigned long>> normal_form;

    std::size_t size() const { return elements.size(); }
    unsigned long mul(unsigned long a, unsigned long b) const {
        unsigned long M = std::max<unsigned long>(field.conductor(), 1);
        return static_cast<unsigned long>((static_cast<unsigned long long>(a) * b) % M);
    }
    unsigned long identity_elem() const {
        return 1 % std::max<unsigned long>(field.conductor(), 1);
    }
    unsigned long pow(unsigned long g, unsigned long e) const {
        unsigned long r = identity_elem();
        for (unsigned long i = 0; i < e; ++i) r = mul(r, g);
        return r;
    }
    std::vector<GaloisAut> auts() const {
        std::vector<GaloisAut> v;
        for (unsigned long d : elements) v.push_back(GaloisAut{d});
        return v;
    }
    bool is_cyclic() const { return gens.size() <= 1; }
    bool is_trivial() const { return elements.size() == 1; }
};

inline GalGroup galois_group(const CycloField& L, const SubfieldSpec& K) {
    unsigned long M = L.conductor();
    unsigned long N = K.parent.conductor();
    if (N == 0 || M % N != 0)
        throw NotASubfield("conductor " + std::to_string(N) + " does not divide " + std::to_string(M));
    GalGroup G;
    G.field = L;
    G.fixed = K.parent == L ? K : lift_subfield(K, L);
    G.elements = G.fixed.elements;

    // generator basis; rank is at most 2 for the prime-power conductors in play
    if (G.elements.size() == 1) {
        G.gens = {};
        G.normal_form[G.identity_elem()] = {};
        return G;
    }
    auto order_of = [&](unsigned long g) {
        unsigned long o = 1, x = g;
        while (x != G.identity_elem()) { x = G.mul(x, g); ++o; }
        return o;
    };
    unsigned long g1 = 0, o1 = 0;
    for (unsigned long g : G.elements) {
        if (g == G.identity_elem()) continue;
        unsigned long o = order_of(g);
        if (o > o1 || (o == o1 && g < g1)) { g1 = g; o1 = o; }
    }
    if (o1 == G.elements.size()) {
        G.gens = {{g1, o1}};
        for (unsigned long e = 0; e < o1; ++e) G.normal_form[G.pow(g1, e)] = {e};
        return G;
    }
    std::set<unsigned long> cyc1;
    for (unsigned long e = 0; e < o1; ++e) cyc1.insert(G.pow(g1, e));
    for (unsigned long g2 : G.elements) {
        if (cyc1.count(g2)) continue;
        unsigned long o2 = order_of(g2);
        if (o1 * o2 != G.elements.size()) continue;
        // intersection must be trivial for unique normal forms
        bool trivial_meet = true;
        for (unsigned long e = 1; e < o2 && trivial_meet; ++e)
            if (cyc1.count(G.pow(g2, e))) trivial_meet = false;
        if (!trivial_meet) continue;
        G.gens = {{g1, o1}, {g2, o2}};
        for (unsigned long e1 = 0; e1 < o1; ++e1)
            for (unsigned long e2 = 0; e2 < o2; ++e2)
                G.normal_form[G.mul(G.pow(g1, e1), G.pow(g2, e2))] = {e1, e2};
        if (G.normal_form.size() != G.elements.size())
            throw Error("galois_group: normal forms are not unique");
        return G;
    }
    throw Error("galois_group: no rank-2 generator basis found");
}

/// A 1-cocycle Gal(K_M/K) -> PGL_2(K_M), stored on every group element.
struct Cocycle {
    GalGroup group;
    std::map<unsigned long, Mobius> values;

    const Mobius& at(unsigned long d) const {
        auto it = values.find(d % std::max<unsigned long>(group.field.conductor(), 1));
        if (it == values.end()) throw Error("cocycle has no value at sigma_" + std::to_string(d));
        return it->second;
    }
    bool is_trivial() const {
        for (const auto& [d, g] : values)
            if (!projectively_equal(g, Mobius::identity(group.field))) return false;
        return true;
    }
    // zeta(st) = zeta(s) . s(zeta(t)) on all pairs, and zeta(1) = 1.
    void validate() const {
        if (!projectively_equal(at(group.identity_elem()), Mobius::identity(group.field)))
            throw InvalidCocycle("zeta(1) is not the identity");
        for (unsigned long s : group.elements)
            for (unsigned long t : group.elements) {
                Mobius lhs = at(group.mul(s, t));
                Mobius rhs = at(s) * apply_aut(GaloisAut{s}, at(t));
                if (!projectively_equal(lhs, rhs))
                    throw InvalidCocycle("cocycle law fails at (" + std::to_string(s) + "," +
                                         std::to_string(t) + ")");
            }
    }

    static Cocycle trivial(const GalGroup& G) {
        Cocycle z;
        z.group = G;
        for (unsigned long d : G.elements) z.values[d] = Mobius::identity(G.field);
        return z;
    }
    // The coboundary sigma |-> A^-1 sigma(A).
    static Cocycle coboundary(const GalGroup& G, const Mobius& A) {
        Cocycle z;
        z.group = G;
        Mobius Ainv = A.inverse();
        for (unsigned long d : G.elements)
            z.values[d] = (Ainv * apply_aut(GaloisAut{d}, A)).canonical();
        return z;
    }
};

/// A GL_n-valued cocycle (n = 2 for lifts, n = 3 for the conic transfer);
/// equality of values is strict.
struct MatrixCocycle {
    GalGroup group;
    std::map<unsigned long, SqMat> values;

    const SqMat& at(unsigned long d) const {
        auto it = values.find(d % std::max<unsigned long>(group.field.conductor(), 1));
        if (it == values.end()) throw Error("matrix cocycle has no value at sigma_" + std::to_string(d));
        return it->second;
    }
    std::size_t dim() const { return values.begin()->second.dim(); }
    void validate() const {
        for (unsigned long s : group.elements)
            for (unsigned long t : group.elements) {
                SqMat lhs = at(group.mul(s, t));
                SqMat rhs = at(s) * apply_aut(GaloisAut{s}, at(t));
                if (!(lhs == rhs))
                    throw InvalidCocycle("matrix cocycle law fails at (" + std::to_string(s) + "," +
                                         std::to_string(t) + ")");
            }
    }
};

/// The scalar 2-cocycle measuring the defect of a PGL_2 -> GL_2 lift.
struct TwoCocycle {
    GalGroup group;
    std::map<std::pair<unsigned long, unsigned long>, CycloElem> table;

    const CycloElem& at(unsigned long s, unsigned long t) const {
        auto it = table.find({s, t});
        if (it == table.end()) throw Error("2-cocycle has no value");
        return it->second;
    }
    void validate() const {
        for (unsigned long s1 : group.elements)
            for (unsigned long s2 : group.elements)
                for (unsigned long s3 : group.elements) {
                    CycloElem lhs = apply_aut(GaloisAut{s1}, at(s2, s3)) * at(s1, group.mul(s2, s3));
                    CycloElem rhs = at(group.mul(s1, s2), s3) * at(s1, s2);
                    if (lhs != rhs) throw InvalidCocycle("2-cocycle identity fails");
                }
    }
};

/// All cocycles zeta on Gal(K_M/K), M = b * cond(pi), satisfying both the
/// cocycle law and sigma(pi) = pi . zeta(sigma). Values on generators come
/// from solution cosets of the Mobius equation; extensions along normal forms
/// are kept only when consistent on every product relation.
inline std::vector<Cocycle> enumerate_cocycles(const RatFunc& pi, const SubfieldSpec& K,
                                               const LevelBound& b, const SolverConfig& cfg = {}) {
    if (pi.is_constant()) throw Error("enumerate_cocycles: constant map");
    unsigned long M = b.b * pi.field().conductor();
    CycloField L = CycloField::get(M);
    RatFunc piL = pi.field() == L ? pi : embed(pi, L);
    GalGroup G = galois_group(L, K);

    if (G.is_trivial()) return {Cocycle::trivial(G)};

    std::vector<std::vector<Mobius>> cosets;
    for (auto [g, ord] : G.gens) {
        RatFunc tgt = apply_aut(GaloisAut{g}, piL);
        auto sols = solve_mobius_equation(piL, tgt, cfg);
        if (sols.empty()) return {};
        cosets.push_back(std::move(sols));
    }

    std::vector<Cocycle> out;
    std::vector<std::size_t> idx(cosets.size(), 0);
    for (;;) {
        // extend the generator assignment to the whole group
        Cocycle z;
        z.group = G;
        std::vector<std::vector<Mobius>> gen_powers; // zeta(g_j^e) for e < ord_j
        for (std::size_t j = 0; j < G.gens.size(); ++j) {
            auto [g, ord] = G.gens[j];
            std::vector<Mobius> pw = {Mobius::identity(L)};
            for (unsigned long e = 1; e < ord; ++e)
                pw.push_back(pw.back() * apply_aut(GaloisAut{G.pow(g, e - 1)}, cosets[j][idx[j]]));
            gen_powers.push_back(std::move(pw));
        }
        for (unsigned long d : G.elements) {
            const auto& nf = G.normal_form.at(d);
            Mobius v = gen_powers[0][nf[0]];
            if (nf.size() == 2) {
                unsigned long prefix = G.pow(G.gens[0].first, nf[0]);
                v = v * apply_aut(GaloisAut{prefix}, gen_powers[1][nf[1]]);
            }
            z.values[d] = v.canonical();
        }
        // keep only consistent extensions that satisfy the twist condition
        bool ok = true;
        try {
            z.validate();
        } catch (const InvalidCocycle&) {
            ok = false;
        }
        if (ok)
            for (unsigned long d : G.elements)
                if (apply_aut(GaloisAut{d}, piL) != compose_mobius(piL, z.at(d))) { ok = false; break; }
        if (ok) out.push_back(std::move(z));

        std::size_t j = 0;
        while (j < idx.size() && ++idx[j] == cosets[j].size()) idx[j++] = 0;
        if (j == idx.size()) break;
    }
    return out;
}

/// Constructive Hilbert 90: A with psi(sigma) = A^-1 sigma(A) for every
/// sigma. Averages the twisted action over the group on a swept product
/// basis and takes the change of basis from n independent projections.
inline SqMat hilbert90(const MatrixCocycle& psi) {
    psi.validate();
    const GalGroup& G = psi.group;
    const CycloField& L = G.field;
    const std::size_t n = psi.dim();
    const Rat inv_order(1, static_cast<long>(G.size()));

    std::vector<std::vector<CycloElem>> columns;   // accepted projections
    std::vector<std::vector<CycloElem>> reduced;   // row-echelon shadows
    std::vector<std::size_t> pivots;

    for (std::size_t a = 0; a < L.degree() && columns.size() < n; ++a) {
        for (std::size_t i = 0; i < n && columns.size() < n; ++i) {
            std::vector<CycloElem> v(n, CycloElem::zero(L));
            v[i] = CycloElem::zeta(L, a);
            // (1/|G|) sum_g psi(g) . g(v)
            std::vector<CycloElem> w(n, CycloElem::zero(L));
            for (unsigned long d : G.elements) {
                std::vector<CycloElem> gv(n);
                for (std::size_t k = 0; k < n; ++k) gv[k] = apply_aut(GaloisAut{d}, v[k]);
                gv = psi.at(d).apply(gv);
                for (std::size_t k = 0; k < n; ++k) w[k] = w[k] + gv[k];
            }
            for (auto& x : w) x = x * inv_order;
            // L-linear independence test against the accepted set
            std::vector<CycloElem> r = w;
            for (std::size_t row = 0; row < reduced.size(); ++row) {
                if (r[pivots[row]].is_zero()) continue;
                CycloElem f = r[pivots[row]];
                for (std::size_t k = 0; k < n; ++k) r[k] = r[k] - f * reduced[row][k];
            }
            std::size_t p = n;
            for (std::size_t k = 0; k < n; ++k)
                if (!r[k].is_zero()) { p = k; break; }
            if (p == n) continue;
            CycloElem pi = r[p].inverse();
            for (auto& x : r) x = x * pi;
            reduced.push_back(std::move(r));
            pivots.push_back(p);
            columns.push_back(std::move(w));
        }
    }
    if (columns.size() < n) throw ProjectionRankDeficient();

    SqMat C(L, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) C.at(i, j) = columns[j][i];
    SqMat A = C.inverse();
    for (unsigned long d : G.elements) {
        if (!(A.inverse() * apply_aut(GaloisAut{d}, A) == psi.at(d)))
            throw Error("hilbert90: postcondition failed at sigma_" + std::to_string(d));
    }
    return A;
}

/// Lift a PGL_2-cocycle to GL_2 with the deterministic scaling rule (first
/// nonzero entry 1, so zeta~(1) = I) and read off the scalar 2-cocycle
/// mu(s,t) = zeta~(s) s(zeta~(t)) zeta~(st)^-1.
inline std::pair<MatrixCocycle, TwoCocycle> lift_and_mu(const Cocycle& z) {
    z.validate();
    const GalGroup& G = z.group;
    MatrixCocycle lift;
    lift.group = G;
    for (unsigned long d : G.elements) lift.values.emplace(d, mobius_to_mat(z.at(d).canonical()));

    TwoCocycle mu;
    mu.group = G;
    for (unsigned long s : G.elements)
        for (unsigned long t : G.elements) {
            SqMat P = lift.at(s) * apply_aut(GaloisAut{s}, lift.at(t));
            const SqMat& Q = lift.at(G.mul(s, t));
            CycloElem ratio = CycloElem::zero(G.field);
            for (std::size_t i = 0; i < 2 && ratio.is_zero(); ++i)
                for (std::size_t j = 0; j < 2 && ratio.is_zero(); ++j)
                    if (!Q.at(i, j).is_zero()) ratio = P.at(i, j) / Q.at(i, j);
            if (!(P == Q * ratio))
                throw Error("lift_and_mu: lift defect is not scalar");
            mu.table[{s, t}] = ratio;
        }
    mu.validate();
    return {std::move(lift), std::move(mu)};
}

/// Bounded search for a' with N_{L/K}(a') = target. Structured candidates
/// (roots of unity, small rationals, cyclotomic 1 - zeta^i factors) come
/// first, then a meet-in-the-middle sweep over small coordinate boxes:
/// quotients x/y of box elements reach targets whose norm splits over the
/// box. Deterministic order; NotFound (nullopt) is a soft outcome.
inline std::optional<CycloElem> solve_norm_equation(const CycloElem& target, const GalGroup& G,
                                                    std::size_t budget = 20000) {
    if (target.is_zero()) throw Error("solve_norm_equation: zero target");
    const CycloField& L = G.field;
    auto auts = G.auts();
    auto norm_of = [&](const CycloElem& a) { return relative_norm(a, auts); };
    auto check = [&](const CycloElem& a) {
        return !a.is_zero() && norm_of(a) == target;
    };

    unsigned long M = std::max<unsigned long>(L.conductor(), 1);
    std::vector<CycloElem> structured;
    structured.push_back(CycloElem::one(L));
    structured.push_back(-CycloElem::one(L));
    for (long p = 2; p <= 8; ++p) {
        for (long q = 1; q <= 3; ++q) {
            if (gcd_ul(p, q) != 1) continue;
            structured.push_back(CycloElem::from_rational(L, rat(p, q)));
            structured.push_back(CycloElem::from_rational(L, rat(-p, q)));
            structured.push_back(CycloElem::from_rational(L, rat(q, p)));
            structured.push_back(CycloElem::from_rational(L, rat(-q, p)));
        }
    }
    for (unsigned long i = 1; i < M; ++i) structured.push_back(CycloElem::zeta(L, i));
    for (unsigned long i = 1; i < M; ++i)
        structured.push_back(CycloElem::one(L) - CycloElem::zeta(L, i));
    std::size_t used = 0;
    for (const auto& a : structured) {
        if (++used > budget) return std::nullopt;
        if (check(a)) return a;
        CycloElem b = a;
        if (!b.is_zero() && check(b.inverse())) return b.inverse();
    }

    // meet in the middle over the height-h coordinate box
    const std::size_t phi = L.degree();
    for (long h = 1; h <= 2; ++h) {
        std::size_t box_size = 1;
        for (std::size_t i = 0; i < phi; ++i) {
            box_size *= static_cast<std::size_t>(2 * h + 1);
            if (box_size > budget) break;
        }
        if (box_size > budget) break;
        std::map<std::string, CycloElem> by_norm;
        std::vector<CycloElem> box;
        std::vector<long> coord(phi, -h);
        for (;;) {
            std::vector<Rat> c(phi);
            bool nonzero = false;
            for (std::size_t i = 0; i < phi; ++i) {
                c[i] = Rat(coord[i]);
                nonzero = nonzero || coord[i] != 0;
            }
            if (nonzero) {
                CycloElem a(L, std::move(c));
                std::string key = norm_of(a).to_string();
                if (!by_norm.count(key)) by_norm[key] = a;
                box.push_back(std::move(a));
            }
            std::size_t i = 0;
            while (i < phi && ++coord[i] > h) coord[i++] = -h;
            if (i == phi) break;
        }
        used += box.size();
        if (used > budget) return std::nullopt;
        {
            auto it = by_norm.find(target.to_string());
            if (it != by_norm.end()) return it->second;
        }
        for (const auto& y : box) {
            CycloElem need = target * norm_of(y);
            auto it = by_norm.find(need.to_string());
            if (it != by_norm.end()) {
                CycloElem a = it->second / y;
                if (check(a)) return a;
            }
        }
    }
    return std::nullopt;
}

/// Preu's trivialization formula for a scalar 2-cocycle over a cyclic group:
/// f(s^i) = mu(s^i, s^n) * (prod_{j<i} mu(s^j, s) s^j(a'))^-1, given a' with
/// N(a') = (prod_{j<n} mu(s^j, s))^-1. The coboundary property of the result
/// is verified on every pair before returning.
inline std::map<unsigned long, CycloElem> preu_f(const TwoCocycle& mu, const GalGroup& G,
                                                 const CycloElem& a_prime) {
    if (!G.is_cyclic()) throw Error("preu_f: group is not cyclic");
    const CycloField& L = G.field;
    unsigned long n = G.size();
    unsigned long s = G.gens.empty() ? G.identity_elem() : G.gens[0].first;

    CycloElem prod = CycloElem::one(L);
    for (unsigned long j = 0; j < n; ++j) prod = prod * mu.at(G.pow(s, j), s);
    if (relative_norm(a_prime, G.auts()) != prod.inverse())
        throw NormMismatch("preu_f: norm of a' does not match the mu product");

    std::map<unsigned long, CycloElem> f;
    for (unsigned long i = 1; i <= n; ++i) {
        CycloElem acc = CycloElem::one(L);
        for (unsigned long j = 0; j < i; ++j)
            acc = acc * mu.at(G.pow(s, j), s) * apply_aut(GaloisAut{G.pow(s, j)}, a_prime);
        f[G.pow(s, i)] = mu.at(G.pow(s, i), G.pow(s, n)) * acc.inverse();
    }
    for (unsigned long x : G.elements)
        for (unsigned long y : G.elements) {
            CycloElem lhs = mu.at(x, y);
            CycloElem rhs = f.at(x) * apply_aut(GaloisAut{x}, f.at(y)) * f.at(G.mul(x, y)).inverse();
            if (lhs != rhs) throw Error("preu_f: coboundary postcondition failed");
        }
    return f;
}

} // namespace cyclotwist
