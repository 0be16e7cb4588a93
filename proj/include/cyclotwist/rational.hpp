#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cyclotwist/errors.hpp"

namespace cyclotwist {

using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw DivisionByZero();
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// "p/q" with q > 0 and gcd(p,q) = 1; the serialization format for coefficients.
inline std::string rat_to_string(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw SchemaError("bad rational literal: " + s);
    r.canonicalize();
    if (r.get_den() < 0) throw SchemaError("negative denominator: " + s);
    return r;
}

// max(|num|, den); the height used by all bounded enumerations.
inline Int rat_height(const Rat& r) {
    Int n = abs(r.get_num());
    return n > r.get_den() ? n : Int(r.get_den());
}

// Deterministic enumeration of nonzero rationals ordered by height:
// 1, -1, 2, -2, 1/2, -1/2, 3, -3, 1/3, -1/3, 2/3, -2/3, 3/2, -3/2, ...
// Probe points for the Mobius-equation solver are drawn from here so runs
// and logs are reproducible.
inline Rat nth_probe_rational(std::size_t index) {
    std::size_t seen = 0;
    for (unsigned long h = 1;; ++h) {
        std::vector<Rat> row;
        row.emplace_back(rat(static_cast<long>(h), 1));
        row.emplace_back(rat(-static_cast<long>(h), 1));
        for (unsigned long q = 2; q <= h; ++q) {
            for (unsigned long p = 1; p <= h; ++p) {
                if (p != h && q != h) continue;           // height is exactly h
                if (mpz_class(gcd(Int(p), Int(q))) != 1) continue;
                row.emplace_back(rat(static_cast<long>(p), static_cast<long>(q)));
                row.emplace_back(rat(-static_cast<long>(p), static_cast<long>(q)));
            }
        }
        if (index < seen + row.size()) return row[index - seen];
        seen += row.size();
    }
}

inline unsigned long gcd_ul(unsigned long a, unsigned long b) {
    while (b) { unsigned long t = a % b; a = b; b = t; }
    return a;
}

inline unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

inline std::vector<unsigned long> divisors_of(unsigned long n) {
    std::vector<unsigned long> small, large;
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
    return small;
}

inline bool is_prime_ul(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

// (p, n) with p prime, n >= 1, p^n == m; nullopt-style via n == 0.
struct PrimePower {
    unsigned long p = 0;
    unsigned long n = 0;
};

inline PrimePower prime_power_of(unsigned long m) {
    if (m < 2) return {};
    unsigned long p = 2;
    while (m % p != 0) {
        ++p;
        if (p * p > m) { p = m; break; }
    }
    unsigned long n = 0, rest = m;
    while (rest % p == 0) { rest /= p; ++n; }
    if (rest != 1) return {};
    return {p, n};
}

inline unsigned long pow_mod_ul(unsigned long base, unsigned long exp, unsigned long mod) {
    unsigned long long r = 1 % mod, b = base % mod;
    while (exp) {
        if (exp & 1) r = (r * b) % mod;
        b = (b * b) % mod;
        exp >>= 1;
    }
    return static_cast<unsigned long>(r);
}

inline unsigned long mul_order_mod(unsigned long a, unsigned long n) {
    if (gcd_ul(a % n, n) != 1) throw NotAUnit(std::to_string(a) + " is not a unit mod " + std::to_string(n));
    unsigned long x = a % n, ord = 1;
    while (x != 1 % n) {
        x = static_cast<unsigned long>((static_cast<unsigned long long>(x) * a) % n);
        ++ord;
        if (ord > n) throw Error("order computation overran the group");
    }
    return ord;
}

} // namespace cyclotwist
