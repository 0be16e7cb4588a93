#pragma once

#include <utility>
#include <vector>

#include "cyclotwist/mobius.hpp"
#include "cyclotwist/poly.hpp"

namespace cyclotwist {

/// A rational function in K_N(t) kept in canonical form: gcd(num, den) = 1
/// and den monic. Canonical form makes equality and subfield-membership tests
/// representation independent.
class RatFunc {
public:
    RatFunc() = default;
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZero();
        canonicalize();
    }

    static RatFunc from_poly(Poly p) {
        CycloField f = p.field();
        return RatFunc(std::move(p), Poly::constant(f, CycloElem::one(f)));
    }
    // t
    static RatFunc variable(const CycloField& f) { return from_poly(Poly::variable(f)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const CycloField& field() const { return num_.field(); }

    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    // max(deg num, deg den); invariant under Mobius composition.
    long degree() const { return std::max(num_.degree(), den_.degree()); }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    std::string to_string() const {
        return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
    }

private:
    void canonicalize() {
        if (num_.is_zero()) {
            den_ = Poly::constant(den_.field(), CycloElem::one(den_.field()));
            return;
        }
        Poly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = divrem(num_, g).first;
            den_ = divrem(den_, g).first;
        }
        CycloElem lead_inv = den_.leading().inverse();
        num_ = num_ * lead_inv;
        den_ = den_ * lead_inv;
    }

    Poly num_, den_;
};

/// pi composed with the Mobius map g: substitute t <- (at+b)/(ct+d) and clear
/// denominators. Degree is preserved because g is invertible.
inline RatFunc compose_mobius(const RatFunc& pi, const Mobius& g) {
    const CycloField& f = pi.field();
    if (g.det().is_zero()) throw SingularMatrix();
    long D = pi.degree();
    Poly lin_num(f, {g.b(), g.a()});  // a*t + b
    Poly lin_den(f, {g.d(), g.c()});  // c*t + d
    // (a t + b)^i (c t + d)^(D - i) for i = 0..D
    std::vector<Poly> pow_num(D + 1, Poly::constant(f, CycloElem::one(f)));
    std::vector<Poly> pow_den(D + 1, Poly::constant(f, CycloElem::one(f)));
    for (long i = 1; i <= D; ++i) {
        pow_num[i] = pow_num[i - 1] * lin_num;
        pow_den[i] = pow_den[i - 1] * lin_den;
    }
    Poly new_num(f), new_den(f);
    for (long i = 0; i <= D; ++i) {
        Poly basis = pow_num[i] * pow_den[D - i];
        if (i <= pi.num().degree() && !pi.num().coeff(i).is_zero())
            new_num = new_num + basis * pi.num().coeff(i);
        if (i <= pi.den().degree() && !pi.den().coeff(i).is_zero())
            new_den = new_den + basis * pi.den().coeff(i);
    }
    RatFunc r(std::move(new_num), std::move(new_den));
    if (r.degree() != D) throw Error("compose_mobius: degree not preserved");
    return r;
}

inline RatFunc apply_aut(const GaloisAut& sigma, const RatFunc& pi) {
    return RatFunc(apply_aut(sigma, pi.num()), apply_aut(sigma, pi.den()));
}

// spec name alias
inline RatFunc galois_apply_ratfunc(const GaloisAut& sigma, const RatFunc& pi) {
    return apply_aut(sigma, pi);
}

inline RatFunc embed(const RatFunc& pi, const CycloField& target) {
    return RatFunc(embed(pi.num(), target), embed(pi.den(), target));
}

inline bool coefficients_in(const RatFunc& pi, const SubfieldSpec& K) {
    for (const auto& x : pi.num().coeffs())
        if (!is_in_subfield(x, K)) return false;
    for (const auto& x : pi.den().coeffs())
        if (!is_in_subfield(x, K)) return false;
    return true;
}

inline P1Point evaluate(const RatFunc& pi, const P1Point& t) {
    const CycloField& f = pi.field();
    if (t.infinite) {
        long dn = pi.num().degree(), dd = pi.den().degree();
        if (dn > dd) return P1Point::inf(f);
        if (dn < dd) return P1Point::at(CycloElem::zero(f));
        return P1Point::at(pi.num().leading() / pi.den().leading());
    }
    CycloElem n = pi.num().evaluate(t.value);
    CycloElem d = pi.den().evaluate(t.value);
    if (d.is_zero()) {
        if (n.is_zero()) throw Indeterminate();
        return P1Point::inf(f);
    }
    return P1Point::at(n / d);
}

} // namespace cyclotwist
