#pragma once

#include <climits>
#include <vector>

#include "cyclotwist/ratfunc.hpp"

namespace cyclotwist {

/// Truncated Laurent series sum c_e q^(e/w) with exact coefficients.
/// Coefficients are known exactly for exponents e in [val, prec); anything at
/// or beyond prec is unknown, never assumed zero. Arithmetic tracks precision
/// with the standard rules and never reports digits beyond what is known.
class LaurentSeries {
public:
    static constexpr long kExact = LONG_MAX / 4; // precision of finite expansions

    LaurentSeries() = default;
    LaurentSeries(CycloField f, long width, long val, long prec, std::vector<CycloElem> coeffs)
        : f_(std::move(f)), w_(width), val_(val), prec_(prec), c_(std::move(coeffs)) {
        if (w_ < 1) throw Error("series width must be positive");
        if (prec_ < val_) throw Error("series precision below valuation");
        // Stored coefficients never extend past the known range; coefficients
        // inside [val, prec) but beyond the stored list are exact zeros.
        if (static_cast<long>(c_.size()) > prec_ - val_)
            c_.resize(static_cast<std::size_t>(prec_ - val_));
    }

    static LaurentSeries constant(const CycloField& f, const CycloElem& a, long width = 1) {
        return LaurentSeries(f, width, 0, kExact, {a});
    }
    // q^(k/width), exact
    static LaurentSeries q_power(const CycloField& f, long k, long width) {
        return LaurentSeries(f, width, k, kExact, {CycloElem::one(f)});
    }

    const CycloField& field() const { return f_; }
    long width() const { return w_; }
    long valuation() const { return val_; }
    long precision() const { return prec_; }
    bool is_exact() const { return prec_ >= kExact / 2; }
    const std::vector<CycloElem>& coeffs() const { return c_; }

    CycloElem coeff(long e) const {
        if (e >= prec_) throw InsufficientPrecision("coefficient at q^" + std::to_string(e) + "/" +
                                                    std::to_string(w_) + " is beyond known precision");
        if (e < val_ || e >= val_ + static_cast<long>(c_.size())) return CycloElem::zero(f_);
        return c_[static_cast<std::size_t>(e - val_)];
    }

    // Drop exact leading zeros so val points at a nonzero coefficient. A
    // series that is zero to its precision gets val = prec (or val = 0 when
    // exact); tight valuations keep the product precision rule sharp.
    LaurentSeries normalized() const {
        LaurentSeries r = *this;
        std::size_t k = 0;
        while (k < r.c_.size() && r.c_[k].is_zero()) ++k;
        r.c_.erase(r.c_.begin(), r.c_.begin() + static_cast<long>(k));
        r.val_ += static_cast<long>(k);
        std::size_t e = r.c_.size();
        while (e > 0 && r.c_[e - 1].is_zero()) --e;
        r.c_.resize(e);
        if (r.c_.empty()) r.val_ = r.is_exact() ? 0 : r.prec_;
        return r;
    }

    bool is_zero_to_precision() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    LaurentSeries truncated(long new_prec) const {
        LaurentSeries r = *this;
        if (new_prec >= r.prec_) return r;
        r.prec_ = new_prec;
        long keep = std::max<long>(0, new_prec - r.val_);
        if (static_cast<long>(r.c_.size()) > keep) r.c_.resize(static_cast<std::size_t>(keep));
        if (r.prec_ < r.val_) r.val_ = r.prec_;
        return r;
    }

    // Re-express with a width that is a multiple of the current one.
    LaurentSeries with_width(long new_w) const {
        if (new_w % w_ != 0) throw Error("width change must be by an integer factor");
        long m = new_w / w_;
        if (m == 1) return *this;
        LaurentSeries r(f_, new_w, val_ * m, is_exact() ? kExact : prec_ * m, {});
        r.c_.assign(c_.size() ? (c_.size() - 1) * m + 1 : 0, CycloElem::zero(f_));
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * m] = c_[i];
        return r;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        auto [x, y] = to_common_width(a, b);
        long val = std::min(x.val_, y.val_);
        long prec = std::min(x.prec_, y.prec_);
        LaurentSeries r(x.f_, x.w_, val, prec, {});
        long len = std::min(prec, std::max(x.val_ + (long)x.c_.size(), y.val_ + (long)y.c_.size())) - val;
        r.c_.assign(std::max<long>(len, 0), CycloElem::zero(x.f_));
        for (std::size_t i = 0; i < x.c_.size(); ++i)
            if (x.val_ + (long)i < prec) r.c_[x.val_ + i - val] = r.c_[x.val_ + i - val] + x.c_[i];
        for (std::size_t i = 0; i < y.c_.size(); ++i)
            if (y.val_ + (long)i < prec) r.c_[y.val_ + i - val] = r.c_[y.val_ + i - val] + y.c_[i];
        return r;
    }
    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
        LaurentSeries nb = b;
        for (auto& x : nb.c_) x = -x;
        return a + nb;
    }
    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        auto [xx, yy] = to_common_width(a, b);
        LaurentSeries x = xx.normalized(), y = yy.normalized();
        if ((x.is_exact() && x.c_.empty()) || (y.is_exact() && y.c_.empty()))
            return LaurentSeries(x.f_, x.w_, 0, kExact, {}); // exact zero factor
        long val = x.val_ + y.val_;
        long prec;
        if (x.is_exact() && y.is_exact()) prec = kExact;
        else if (x.is_exact()) prec = y.prec_ + x.val_;
        else if (y.is_exact()) prec = x.prec_ + y.val_;
        else prec = std::min(x.prec_ + y.val_, y.prec_ + x.val_);
        LaurentSeries r(x.f_, x.w_, val, prec, {});
        long len = std::min<long>(prec - val, (long)x.c_.size() + (long)y.c_.size() - 1);
        if (x.c_.empty() || y.c_.empty()) len = 0;
        r.c_.assign(std::max<long>(len, 0), CycloElem::zero(x.f_));
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j) {
                if ((long)(i + j) >= len) break;
                if (y.c_[j].is_zero()) continue;
                r.c_[i + j] = r.c_[i + j] + x.c_[i] * y.c_[j];
            }
        }
        return r;
    }
    friend LaurentSeries operator*(const LaurentSeries& a, const CycloElem& s) {
        LaurentSeries r = a;
        for (auto& x : r.c_) x = x * s;
        return r;
    }

    // Multiplicative inverse; requires a nonzero leading coefficient within
    // the known range. Known to relative precision (prec - val), i.e. result
    // precision is prec - 2*val.
    LaurentSeries inverse() const {
        LaurentSeries s = normalized();
        if (s.c_.empty() || s.c_[0].is_zero()) {
            if (s.is_exact()) throw DivisionByZero();
            throw InsufficientPrecision("series inverse: leading coefficient unknown or zero");
        }
        long rel = s.is_exact() ? 64 : s.prec_ - s.val_; // exact input still yields a truncation
        CycloElem c0_inv = s.c_[0].inverse();
        std::vector<CycloElem> g(static_cast<std::size_t>(rel), CycloElem::zero(f_));
        g[0] = c0_inv;
        for (long k = 1; k < rel; ++k) {
            CycloElem acc = CycloElem::zero(f_);
            for (long i = 1; i <= k; ++i) {
                if (i >= (long)s.c_.size()) break;
                acc = acc + s.c_[i] * g[k - i];
            }
            g[k] = -(c0_inv * acc);
        }
        long prec = s.is_exact() ? -s.val_ + rel : s.prec_ - 2 * s.val_;
        return LaurentSeries(f_, w_, -s.val_, prec, std::move(g));
    }

    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + c_[i].to_string() + ")q^(" + std::to_string(val_ + (long)i) + "/" +
                   std::to_string(w_) + ")";
        }
        if (out.empty()) out = "0";
        if (!is_exact())
            out += " + O(q^(" + std::to_string(prec_) + "/" + std::to_string(w_) + "))";
        return out;
    }

private:
    static std::pair<LaurentSeries, LaurentSeries> to_common_width(const LaurentSeries& a,
                                                                   const LaurentSeries& b) {
        if (a.f_ != b.f_) throw Error("series over different fields");
        long w = a.w_ / gcd_ul(a.w_, b.w_) * b.w_;
        return {a.with_width(w), b.with_width(w)};
    }

    CycloField f_;
    long w_ = 1;
    long val_ = 0;
    long prec_ = kExact;
    std::vector<CycloElem> c_;
};

// pi(h) as a Laurent series to the maximal provable precision. Used to check
// pi_Gamma(h) = j + O(q^k) against fixture data.
inline LaurentSeries series_compose(const RatFunc& pi, const LaurentSeries& h) {
    const CycloField& f = pi.field();
    auto horner = [&](const Poly& p) {
        LaurentSeries acc = LaurentSeries::constant(f, CycloElem::zero(f), h.width());
        for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
            acc = acc * h + LaurentSeries::constant(f, *it, h.width());
        return acc;
    };
    LaurentSeries num_h = horner(pi.num());
    LaurentSeries den_h = horner(pi.den());
    if (den_h.normalized().is_zero_to_precision())
        throw InsufficientPrecision("series_compose: denominator vanishes to available precision");
    return num_h * den_h.inverse();
}

namespace qexp {

// sigma_k(n), the divisor power sum.
inline Int sigma_k(unsigned long n, unsigned long k) {
    Int s = 0;
    for (unsigned long d : divisors_of(n)) {
        Int t = 1;
        for (unsigned long i = 0; i < k; ++i) t *= d;
        s += t;
    }
    return s;
}

// prod_{n>=1} (1 - q^n)^k truncated to `terms` coefficients (k may be negative).
inline std::vector<Rat> eta_product_pow(long k, std::size_t terms) {
    std::vector<Rat> p(terms, Rat(0));
    p[0] = 1;
    auto mul_factor = [&](unsigned long n, long e) {
        // multiply by (1 - q^n)^e, e = +1/-1 steps
        for (long rep = 0; rep < std::abs(e); ++rep) {
            if (e > 0) {
                for (std::size_t i = terms; i-- > n;) p[i] -= p[i - n];
            } else {
                for (std::size_t i = n; i < terms; ++i) p[i] += p[i - n];
            }
        }
    };
    for (unsigned long n = 1; n < terms; ++n) mul_factor(n, k > 0 ? 1 : -1);
    if (std::abs(k) > 1) {
        std::vector<Rat> base = p;
        for (long rep = 1; rep < std::abs(k); ++rep) {
            std::vector<Rat> acc(terms, Rat(0));
            for (std::size_t i = 0; i < terms; ++i) {
                if (p[i] == 0) continue;
                for (std::size_t j = 0; i + j < terms; ++j) acc[i + j] += p[i] * base[j];
            }
            p = std::move(acc);
        }
    }
    return p;
}

inline std::vector<Rat> eisenstein_e4(std::size_t terms) {
    std::vector<Rat> e(terms, Rat(0));
    e[0] = 1;
    for (unsigned long n = 1; n < terms; ++n) e[n] = Rat(240) * Rat(sigma_k(n, 3));
    return e;
}

inline std::vector<Rat> eisenstein_e6(std::size_t terms) {
    std::vector<Rat> e(terms, Rat(0));
    e[0] = 1;
    for (unsigned long n = 1; n < terms; ++n) e[n] = Rat(-504) * Rat(sigma_k(n, 5));
    return e;
}

inline LaurentSeries from_q_integral(const CycloField& f, const std::vector<Rat>& coeffs,
                                     long val, long width) {
    std::vector<CycloElem> c;
    c.reserve(coeffs.size());
    for (const auto& r : coeffs) c.push_back(CycloElem::from_rational(f, r));
    return LaurentSeries(f, width, val, val + static_cast<long>(coeffs.size()), std::move(c));
}

} // namespace qexp

// The modular j-invariant q^-1 + 744 + 196884 q + ... computed as E4^3/Delta,
// with coefficients known for exponents in [-1, prec).
inline LaurentSeries j_expansion(const CycloField& f, long prec) {
    std::size_t terms = static_cast<std::size_t>(std::max<long>(prec + 1, 2));
    auto e4 = qexp::eisenstein_e4(terms);
    auto p24 = qexp::eta_product_pow(24, terms);
    std::vector<Rat> e4cubed(terms, Rat(0));
    {
        std::vector<Rat> sq(terms, Rat(0));
        for (std::size_t i = 0; i < terms; ++i) {
            if (e4[i] == 0) continue;
            for (std::size_t j = 0; i + j < terms; ++j) sq[i + j] += e4[i] * e4[j];
        }
        for (std::size_t i = 0; i < terms; ++i) {
            if (sq[i] == 0) continue;
            for (std::size_t j = 0; i + j < terms; ++j) e4cubed[i + j] += sq[i] * e4[j];
        }
    }
    LaurentSeries num = qexp::from_q_integral(f, e4cubed, 0, 1);
    LaurentSeries delta = qexp::from_q_integral(f, p24, 1, 1); // q * prod(1-q^n)^24
    return (num * delta.inverse()).truncated(prec);
}

} // namespace cyclotwist
