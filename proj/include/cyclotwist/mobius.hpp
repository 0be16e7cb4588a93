#pragma once

#include <array>
#include <string>
#include <utility>

#include "cyclotwist/cyclotomic.hpp"

namespace cyclotwist {

/// A point of P^1(K_N): either a field element or the point at infinity.
struct P1Point {
    bool infinite = false;
    CycloElem value; // meaningful only when !infinite

    static P1Point inf(const CycloField& f) { return {true, CycloElem::zero(f)}; }
    static P1Point at(CycloElem v) { return {false, std::move(v)}; }

    friend bool operator==(const P1Point& a, const P1Point& b) {
        if (a.infinite || b.infinite) return a.infinite == b.infinite;
        return a.value == b.value;
    }
    friend bool operator!=(const P1Point& a, const P1Point& b) { return !(a == b); }

    // Homogeneous coordinates [x : y], infinity = [1 : 0].
    std::pair<CycloElem, CycloElem> homogeneous(const CycloField& f) const {
        if (infinite) return {CycloElem::one(f), CycloElem::zero(f)};
        return {value, CycloElem::one(f)};
    }
    std::string to_string() const { return infinite ? "inf" : value.to_string(); }
};

/// An element of PGL_2(K_N): an invertible 2x2 matrix [[a,b],[c,d]] up to a
/// scalar. Equality is projective; canonical() scales the first nonzero
/// entry (scanning a,b,c,d) to 1.
class Mobius {
public:
    Mobius() = default;
    Mobius(CycloElem a, CycloElem b, CycloElem c, CycloElem d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
        if (det().is_zero()) throw SingularMatrix();
    }

    static Mobius identity(const CycloField& f) {
        return Mobius(CycloElem::one(f), CycloElem::zero(f), CycloElem::zero(f), CycloElem::one(f));
    }
    static Mobius from_rationals(const CycloField& f, const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
        return Mobius(CycloElem::from_rational(f, a), CycloElem::from_rational(f, b),
                      CycloElem::from_rational(f, c), CycloElem::from_rational(f, d));
    }
    // t |-> s*t
    static Mobius scaling(const CycloElem& s) {
        const CycloField& f = s.field();
        return Mobius(s, CycloElem::zero(f), CycloElem::zero(f), CycloElem::one(f));
    }

    const CycloElem& a() const { return a_; }
    const CycloElem& b() const { return b_; }
    const CycloElem& c() const { return c_; }
    const CycloElem& d() const { return d_; }
    const CycloField& field() const { return a_.field(); }

    CycloElem det() const { return a_ * d_ - b_ * c_; }

    Mobius canonical() const {
        const CycloElem* pivot = nullptr;
        for (const CycloElem* e : {&a_, &b_, &c_, &d_})
            if (!e->is_zero()) { pivot = e; break; }
        CycloElem inv = pivot->inverse();
        return Mobius(a_ * inv, b_ * inv, c_ * inv, d_ * inv);
    }

    friend Mobius operator*(const Mobius& g, const Mobius& h) {
        return Mobius(g.a_ * h.a_ + g.b_ * h.c_, g.a_ * h.b_ + g.b_ * h.d_,
                      g.c_ * h.a_ + g.d_ * h.c_, g.c_ * h.b_ + g.d_ * h.d_);
    }
    Mobius inverse() const { return Mobius(d_, -b_, -c_, a_); }

    // Projective equality: all 2x2 minors of the stacked 2x4 matrix vanish.
    friend bool projectively_equal(const Mobius& g, const Mobius& h) {
        const std::array<const CycloElem*, 4> u = {&g.a_, &g.b_, &g.c_, &g.d_};
        const std::array<const CycloElem*, 4> v = {&h.a_, &h.b_, &h.c_, &h.d_};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j)
                if (*u[i] * *v[j] != *u[j] * *v[i]) return false;
        return true;
    }

    P1Point apply(const P1Point& t) const {
        const CycloField& f = field();
        auto [x, y] = t.homogeneous(f);
        CycloElem nx = a_ * x + b_ * y;
        CycloElem ny = c_ * x + d_ * y;
        if (ny.is_zero()) {
            if (nx.is_zero()) throw Error("mobius apply: image is not a projective point");
            return P1Point::inf(f);
        }
        return P1Point::at(nx / ny);
    }

    std::string to_string() const {
        return "[[" + a_.to_string() + ", " + b_.to_string() + "], [" + c_.to_string() + ", " +
               d_.to_string() + "]]";
    }

private:
    CycloElem a_, b_, c_, d_;
};

inline Mobius apply_aut(const GaloisAut& sigma, const Mobius& g) {
    return Mobius(apply_aut(sigma, g.a()), apply_aut(sigma, g.b()),
                  apply_aut(sigma, g.c()), apply_aut(sigma, g.d()));
}

inline Mobius embed(const Mobius& g, const CycloField& target) {
    return Mobius(embed(g.a(), target), embed(g.b(), target),
                  embed(g.c(), target), embed(g.d(), target));
}

// Canonical entry list, used for deterministic ordering of solution sets.
inline bool mobius_lex_less(const Mobius& g, const Mobius& h) {
    Mobius cg = g.canonical(), ch = h.canonical();
    for (auto pick : {&Mobius::a, &Mobius::b, &Mobius::c, &Mobius::d}) {
        const CycloElem& x = (cg.*pick)();
        const CycloElem& y = (ch.*pick)();
        if (x != y) return lex_less(x, y);
    }
    return false;
}

// The unique Mobius transformation taking three distinct points to three
// distinct points. Built from the classical basis trick: the matrix with
// columns (lambda*A, mu*B), where lambda*A + mu*B = C, sends (1:0), (0:1),
// (1:1) to A, B, C.
inline Mobius mobius_through(const CycloField& f,
                             const std::array<P1Point, 3>& src,
                             const std::array<P1Point, 3>& dst) {
    auto standard_to = [&f](const std::array<P1Point, 3>& pts) {
        auto [x1, y1] = pts[0].homogeneous(f);
        auto [x2, y2] = pts[1].homogeneous(f);
        auto [x3, y3] = pts[2].homogeneous(f);
        // Solve lambda*(x1,y1) + mu*(x2,y2) = (x3,y3) by Cramer.
        CycloElem det = x1 * y2 - x2 * y1;
        if (det.is_zero()) throw Error("mobius_through: coincident points");
        CycloElem lambda = (x3 * y2 - x2 * y3) / det;
        CycloElem mu = (x1 * y3 - x3 * y1) / det;
        if (lambda.is_zero() || mu.is_zero()) throw Error("mobius_through: coincident points");
        return Mobius(lambda * x1, mu * x2, lambda * y1, mu * y2);
    };
    Mobius s = standard_to(src);
    Mobius t = standard_to(dst);
    return t * s.inverse();
}

} // namespace cyclotwist
