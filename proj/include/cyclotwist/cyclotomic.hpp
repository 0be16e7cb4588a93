#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cyclotwist/errors.hpp"
#include "cyclotwist/rational.hpp"

namespace cyclotwist {

namespace detail {

// Dense univariate polynomials over Q, ascending coefficients, used for the
// modulus bookkeeping below. Degree of the zero polynomial is -1.
using QPoly = std::vector<Rat>;

inline void qp_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly qp_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    qp_trim(r);
    return r;
}

inline std::pair<QPoly, QPoly> qp_divrem(const QPoly& a, const QPoly& b) {
    if (b.empty()) throw DivisionByZero();
    QPoly rem = a, quot;
    qp_trim(rem);
    if (rem.size() >= b.size()) quot.assign(rem.size() - b.size() + 1, Rat(0));
    const Rat& lead = b.back();
    while (rem.size() >= b.size()) {
        Rat f = rem.back() / lead;
        std::size_t shift = rem.size() - b.size();
        quot[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) rem[shift + i] -= f * b[i];
        qp_trim(rem);
        if (!rem.empty() && rem.size() >= b.size() && rem.back() == 0) qp_trim(rem);
    }
    qp_trim(quot);
    return {quot, rem};
}

// g = gcd, plus u with u*a + v*modulus = g. Only u is needed for inverses.
inline std::pair<QPoly, QPoly> qp_half_xgcd(QPoly a, QPoly b) {
    QPoly u0 = {Rat(1)}, u1 = {};
    qp_trim(a);
    qp_trim(b);
    while (!b.empty()) {
        auto [q, r] = qp_divrem(a, b);
        QPoly u2 = u0;
        QPoly qu1 = qp_mul(q, u1);
        if (u2.size() < qu1.size()) u2.resize(qu1.size(), Rat(0));
        for (std::size_t i = 0; i < qu1.size(); ++i) u2[i] -= qu1[i];
        qp_trim(u2);
        u0 = std::move(u1);
        u1 = std::move(u2);
        a = std::move(b);
        b = std::move(r);
    }
    return {a, u0};
}

} // namespace detail

// Phi_N, monic of degree phi(N), by exact division of x^N - 1 by the proper
// cyclotomic factors.
inline std::vector<Rat> cyclotomic_polynomial(unsigned long N) {
    if (N < 1) throw Error("cyclotomic_polynomial: N must be >= 1");
    std::vector<Rat> acc = {Rat(-1), Rat(1)}; // Phi_1 = x - 1
    if (N == 1) return acc;
    std::map<unsigned long, detail::QPoly> memo;
    memo[1] = acc;
    for (unsigned long d : divisors_of(N)) {
        if (d == 1) continue;
        detail::QPoly num(d + 1, Rat(0));
        num[0] = Rat(-1);
        num[d] = Rat(1);
        detail::QPoly den = {Rat(1)};
        for (unsigned long e : divisors_of(d))
            if (e != d) den = detail::qp_mul(den, memo.at(e));
        auto [q, r] = detail::qp_divrem(num, den);
        if (!r.empty()) throw Error("cyclotomic_polynomial: non-exact division");
        memo[d] = std::move(q);
    }
    return memo.at(N);
}

/// The cyclotomic field K_N = Q(zeta_N), held by value as a shared immutable
/// flyweight. Elements are coordinate vectors in the power basis
/// 1, zeta, ..., zeta^(phi(N)-1); all arithmetic reduces modulo Phi_N.
class CycloField {
public:
    struct Data {
        unsigned long N = 0;
        unsigned long degree = 0;             // phi(N)
        std::vector<Rat> modulus;             // Phi_N, ascending, monic
        std::vector<std::vector<Rat>> zeta_pow; // zeta^k in the power basis
    };

    CycloField() = default;

    static CycloField get(unsigned long N) {
        static std::mutex mu;
        static std::map<unsigned long, std::shared_ptr<const Data>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(N);
        if (it != cache.end()) return CycloField(it->second);
        auto d = std::make_shared<Data>();
        d->N = N;
        d->degree = euler_phi(N);
        d->modulus = cyclotomic_polynomial(N);
        std::size_t rows = std::max<std::size_t>(2 * d->degree - 1, N);
        d->zeta_pow.resize(rows);
        for (std::size_t k = 0; k < rows; ++k) {
            std::vector<Rat> row(d->degree, Rat(0));
            if (k < d->degree) {
                row[k] = 1;
            } else {
                // zeta^k = zeta * zeta^(k-1), then fold the overflow
                // coefficient back with -Phi's lower part (Phi is monic).
                const auto& prev = d->zeta_pow[k - 1];
                Rat carry = prev[d->degree - 1];
                for (std::size_t i = d->degree - 1; i > 0; --i) row[i] = prev[i - 1];
                row[0] = 0;
                for (std::size_t i = 0; i < d->degree; ++i)
                    row[i] -= carry * d->modulus[i];
            }
            d->zeta_pow[k] = std::move(row);
        }
        cache[N] = d;
        return CycloField(d);
    }

    unsigned long conductor() const { return d_->N; }
    unsigned long degree() const { return d_->degree; }
    const std::vector<Rat>& modulus() const { return d_->modulus; }
    const std::vector<Rat>& zeta_power(unsigned long k) const { return d_->zeta_pow.at(k); }
    bool valid() const { return d_ != nullptr; }

    friend bool operator==(const CycloField& a, const CycloField& b) {
        return a.d_->N == b.d_->N;
    }
    friend bool operator!=(const CycloField& a, const CycloField& b) { return !(a == b); }

private:
    explicit CycloField(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

/// The automorphism sigma_d of K_N acting by zeta |-> zeta^d; requires
/// gcd(d, N) = 1. d is stored reduced mod N.
struct GaloisAut {
    unsigned long d = 1;

    static GaloisAut of(unsigned long d, unsigned long N) {
        unsigned long r = N ? d % N : d;
        if (N && gcd_ul(r == 0 ? N : r, N) != 1)
            throw NotAUnit("sigma_" + std::to_string(d) + " is not a unit mod " + std::to_string(N));
        return GaloisAut{r == 0 && N == 1 ? 0ul : r};
    }
};

class CycloElem {
public:
    CycloElem() = default;
    explicit CycloElem(CycloField f) : f_(std::move(f)), c_(f_.degree(), Rat(0)) {}
    CycloElem(CycloField f, std::vector<Rat> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
        if (c_.size() != f_.degree()) throw Error("coefficient vector has wrong length");
    }

    static CycloElem zero(const CycloField& f) { return CycloElem(f); }
    static CycloElem one(const CycloField& f) { return from_rational(f, Rat(1)); }
    static CycloElem from_rational(const CycloField& f, const Rat& r) {
        CycloElem e(f);
        e.c_[0] = r;
        e.c_[0].canonicalize();
        return e;
    }
    // zeta_N^k
    static CycloElem zeta(const CycloField& f, unsigned long k = 1) {
        CycloElem e(f);
        e.c_ = f.zeta_power(k % std::max<unsigned long>(f.conductor(), 1));
        return e;
    }

    const CycloField& field() const { return f_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    Rat rational_value() const {
        if (!is_rational()) throw Error("element is not rational");
        return c_[0];
    }

    friend bool operator==(const CycloElem& a, const CycloElem& b) {
        return a.f_ == b.f_ && a.c_ == b.c_;
    }
    friend bool operator!=(const CycloElem& a, const CycloElem& b) { return !(a == b); }

    friend CycloElem operator+(const CycloElem& a, const CycloElem& b) {
        a.check_same_field(b);
        CycloElem r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }
    friend CycloElem operator-(const CycloElem& a, const CycloElem& b) {
        a.check_same_field(b);
        CycloElem r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }
    friend CycloElem operator-(const CycloElem& a) {
        CycloElem r = a;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend CycloElem operator*(const CycloElem& a, const CycloElem& b) {
        a.check_same_field(b);
        const std::size_t n = a.c_.size();
        std::vector<Rat> conv(2 * n - 1, Rat(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b.c_[j] == 0) continue;
                conv[i + j] += a.c_[i] * b.c_[j];
            }
        }
        CycloElem r(a.f_);
        for (std::size_t k = 0; k < n; ++k) r.c_[k] = conv[k];
        for (std::size_t k = n; k < conv.size(); ++k) {
            if (conv[k] == 0) continue;
            const auto& row = a.f_.zeta_power(k);
            for (std::size_t i = 0; i < n; ++i) r.c_[i] += conv[k] * row[i];
        }
        return r;
    }
    friend CycloElem operator*(const CycloElem& a, const Rat& s) {
        CycloElem r = a;
        for (auto& x : r.c_) x *= s;
        return r;
    }
    friend CycloElem operator*(const Rat& s, const CycloElem& a) { return a * s; }

    CycloElem inverse() const {
        if (is_zero()) throw DivisionByZero();
        detail::QPoly a(c_.begin(), c_.end());
        detail::qp_trim(a);
        auto [g, u] = detail::qp_half_xgcd(a, detail::QPoly(f_.modulus().begin(), f_.modulus().end()));
        if (g.size() != 1) throw Error("inverse: gcd with modulus is not constant");
        CycloElem r(f_);
        Rat scale = Rat(1) / g[0];
        for (std::size_t i = 0; i < u.size() && i < r.c_.size(); ++i) r.c_[i] = u[i] * scale;
        // u may exceed the basis degree only transiently; xgcd keeps deg u < deg modulus.
        if (u.size() > r.c_.size()) throw Error("inverse: cofactor degree out of range");
        return r;
    }
    friend CycloElem operator/(const CycloElem& a, const CycloElem& b) { return a * b.inverse(); }

    // Total order on coordinate vectors; used for canonical sorting only.
    friend bool lex_less(const CycloElem& a, const CycloElem& b) {
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            int c = cmp(a.c_[i], b.c_[i]);
            if (c != 0) return c < 0;
        }
        return false;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += rat_to_string(c_[i]);
            if (i > 0) s += "*z^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

private:
    void check_same_field(const CycloElem& other) const {
        if (f_ != other.f_) throw Error("elements of different cyclotomic fields");
    }

    CycloField f_;
    std::vector<Rat> c_;
};

// sigma_d applied coefficientwise through the power basis: zeta^i |-> zeta^(i*d mod N).
inline CycloElem apply_aut(const GaloisAut& sigma, const CycloElem& a) {
    const CycloField& f = a.field();
    unsigned long N = f.conductor();
    unsigned long d = N ? sigma.d % N : 0;
    if (N > 1 && gcd_ul(d == 0 ? N : d, N) != 1)
        throw NotAUnit("sigma_" + std::to_string(sigma.d) + " is not a unit mod " + std::to_string(N));
    CycloElem r(f);
    std::vector<Rat> acc(f.degree(), Rat(0));
    for (std::size_t i = 0; i < f.degree(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        const auto& row = f.zeta_power((i * d) % std::max<unsigned long>(N, 1));
        for (std::size_t k = 0; k < f.degree(); ++k) acc[k] += a.coeffs()[i] * row[k];
    }
    return CycloElem(f, std::move(acc));
}

// prod_{sigma in G} sigma(a); fixed by every element of G when G is a group.
inline CycloElem relative_norm(const CycloElem& a, const std::vector<GaloisAut>& G) {
    CycloElem r = CycloElem::one(a.field());
    for (const auto& s : G) r = r * apply_aut(s, a);
    return r;
}

// Image of K_N in K_M under zeta_N |-> zeta_M^(M/N); requires N | M.
inline CycloElem embed(const CycloElem& a, const CycloField& target) {
    unsigned long N = a.field().conductor(), M = target.conductor();
    if (N == 0 || M % N != 0)
        throw NotADivisor(std::to_string(N) + " does not divide " + std::to_string(M));
    unsigned long stride = M / N;
    std::vector<Rat> acc(target.degree(), Rat(0));
    for (std::size_t i = 0; i < a.field().degree(); ++i) {
        if (a.coeffs()[i] == 0) continue;
        const auto& row = target.zeta_power((i * stride) % std::max<unsigned long>(M, 1));
        for (std::size_t k = 0; k < target.degree(); ++k) acc[k] += a.coeffs()[i] * row[k];
    }
    return CycloElem(target, std::move(acc));
}

} // namespace cyclotwist
