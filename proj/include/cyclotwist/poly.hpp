#pragma once

#include <utility>
#include <vector>

#include "cyclotwist/cyclotomic.hpp"
#include "cyclotwist/subfield.hpp"

namespace cyclotwist {

/// Univariate polynomial over K_N, ascending coefficients, no trailing zeros.
/// The zero polynomial has an empty coefficient list and degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(CycloField f) : f_(std::move(f)) {}
    Poly(CycloField f, std::vector<CycloElem> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
        trim();
    }

    static Poly zero(const CycloField& f) { return Poly(f); }
    static Poly constant(const CycloField& f, const CycloElem& a) { return Poly(f, {a}); }
    static Poly monomial(const CycloField& f, const CycloElem& a, std::size_t deg) {
        std::vector<CycloElem> c(deg + 1, CycloElem::zero(f));
        c[deg] = a;
        return Poly(f, std::move(c));
    }
    // t
    static Poly variable(const CycloField& f) {
        return monomial(f, CycloElem::one(f), 1);
    }
    static Poly from_roots(const CycloField& f, const std::vector<CycloElem>& roots) {
        Poly p = constant(f, CycloElem::one(f));
        for (const auto& r : roots)
            p = p * Poly(f, {-r, CycloElem::one(f)});
        return p;
    }

    const CycloField& field() const { return f_; }
    const std::vector<CycloElem>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    CycloElem coeff(std::size_t i) const {
        return i < c_.size() ? c_[i] : CycloElem::zero(f_);
    }
    CycloElem leading() const {
        if (c_.empty()) throw Error("leading coefficient of zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !c_.empty() && c_.back() == CycloElem::one(f_); }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.f_ == b.f_ && a.c_ == b.c_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r(a.f_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), CycloElem::zero(a.f_));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = r.c_[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] = r.c_[i] + b.c_[i];
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r(a.f_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), CycloElem::zero(a.f_));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = r.c_[i] + a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] = r.c_[i] - b.c_[i];
        r.trim();
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly(a.f_);
        Poly r(a.f_);
        r.c_.assign(a.c_.size() + b.c_.size() - 1, CycloElem::zero(a.f_));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
            }
        }
        r.trim();
        return r;
    }
    friend Poly operator*(const Poly& a, const CycloElem& s) {
        Poly r = a;
        for (auto& x : r.c_) x = x * s;
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw DivisionByZero();
        Poly rem = a, quot(a.f_);
        if (rem.degree() >= b.degree())
            quot.c_.assign(rem.c_.size() - b.c_.size() + 1, CycloElem::zero(a.f_));
        CycloElem lead_inv = b.leading().inverse();
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            CycloElem f = rem.leading() * lead_inv;
            std::size_t shift = rem.c_.size() - b.c_.size();
            quot.c_[shift] = f;
            for (std::size_t i = 0; i < b.c_.size(); ++i)
                rem.c_[shift + i] = rem.c_[shift + i] - f * b.c_[i];
            rem.trim();
        }
        quot.trim();
        return {quot, rem};
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly(f_);
        std::vector<CycloElem> d(c_.size() - 1, CycloElem::zero(f_));
        for (std::size_t i = 1; i < c_.size(); ++i)
            d[i - 1] = c_[i] * Rat(static_cast<long>(i));
        return Poly(f_, std::move(d));
    }

    CycloElem evaluate(const CycloElem& t) const {
        CycloElem r = CycloElem::zero(f_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
        return r;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return *this * leading().inverse();
    }

    // Rescale by the rational making integer coordinates with unit content;
    // keeps Euclidean remainders from ballooning. Result differs from the
    // input by a nonzero rational factor only.
    Poly normalized_assoc() const {
        if (is_zero()) return *this;
        Int den_lcm = 1, num_gcd = 0;
        for (const auto& e : c_)
            for (const auto& q : e.coeffs()) {
                if (q == 0) continue;
                den_lcm = lcm(den_lcm, Int(q.get_den()));
            }
        for (const auto& e : c_)
            for (const auto& q : e.coeffs()) {
                if (q == 0) continue;
                Int n = abs(Int(q.get_num()) * den_lcm / Int(q.get_den()));
                num_gcd = num_gcd == 0 ? n : gcd(num_gcd, n);
            }
        if (num_gcd == 0) num_gcd = 1;
        Rat scale(den_lcm, num_gcd);
        scale.canonicalize();
        Poly r = *this;
        for (auto& x : r.c_) x = x * scale;
        return r;
    }

    friend Poly gcd(const Poly& a, const Poly& b) {
        Poly x = a.normalized_assoc(), y = b.normalized_assoc();
        while (!y.is_zero()) {
            Poly r = divrem(x, y).second.normalized_assoc();
            x = std::move(y);
            y = std::move(r);
        }
        return x.monic();
    }

    Poly squarefree_part() const {
        if (is_zero()) throw Error("squarefree part of zero polynomial");
        if (degree() == 0) return monic();
        Poly g = gcd(*this, derivative());
        return divrem(*this, g).first.monic();
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + c_[i].to_string() + ")";
            if (i == 1) s += "*t";
            if (i > 1) s += "*t^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    CycloField f_;
    std::vector<CycloElem> c_;
};

inline Poly apply_aut(const GaloisAut& sigma, const Poly& p) {
    std::vector<CycloElem> c;
    c.reserve(p.coeffs().size());
    for (const auto& x : p.coeffs()) c.push_back(apply_aut(sigma, x));
    return Poly(p.field(), std::move(c));
}

inline Poly embed(const Poly& p, const CycloField& target) {
    std::vector<CycloElem> c;
    c.reserve(p.coeffs().size());
    for (const auto& x : p.coeffs()) c.push_back(embed(x, target));
    return Poly(target, std::move(c));
}

} // namespace cyclotwist
