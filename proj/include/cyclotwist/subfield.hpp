#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "cyclotwist/cyclotomic.hpp"

namespace cyclotwist {

namespace detail {

// Row-reduce rational row vectors, keeping track of pivot columns. Appending
// returns true when the row enlarged the span.
class QRowSpan {
public:
    bool add(std::vector<Rat> row) {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (row[pivots_[r]] == 0) continue;
            Rat f = row[pivots_[r]];
            for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * rows_[r][j];
        }
        std::size_t p = row.size();
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) { p = j; break; }
        if (p == row.size()) return false;
        Rat inv = Rat(1) / row[p];
        for (auto& x : row) x *= inv;
        rows_.push_back(std::move(row));
        pivots_.push_back(p);
        return true;
    }
    std::size_t rank() const { return rows_.size(); }
    // Whether row lies in the current span.
    bool contains(std::vector<Rat> row) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (row[pivots_[r]] == 0) continue;
            Rat f = row[pivots_[r]];
            for (std::size_t j = 0; j < row.size(); ++j) row[j] -= f * rows_[r][j];
        }
        for (const auto& x : row)
            if (x != 0) return false;
        return true;
    }

private:
    std::vector<std::vector<Rat>> rows_;
    std::vector<std::size_t> pivots_;
};

inline std::vector<unsigned long> close_subgroup(unsigned long N, std::vector<unsigned long> gens) {
    std::set<unsigned long> elems = {1 % N};
    std::vector<unsigned long> frontier(elems.begin(), elems.end());
    for (auto& g : gens) {
        g %= N;
        if (gcd_ul(g == 0 ? N : g, N) != 1)
            throw NotAUnit(std::to_string(g) + " is not a unit mod " + std::to_string(N));
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<unsigned long> cur(elems.begin(), elems.end());
        for (unsigned long x : cur)
            for (unsigned long g : gens) {
                unsigned long y = static_cast<unsigned long>(
                    (static_cast<unsigned long long>(x) * g) % N);
                if (elems.insert(y).second) grew = true;
            }
    }
    return {elems.begin(), elems.end()};
}

} // namespace detail

// Independent generators of (Z/NZ)^x with their orders, via CRT over the
// prime-power factors. Odd prime powers contribute the least primitive root;
// 2^m with m >= 3 contributes -1 (order 2) and 5 (order 2^(m-2)).
inline std::vector<std::pair<unsigned long, unsigned long>> unit_group_structure(unsigned long N) {
    if (N < 3) throw Error("unit_group_structure: N must be >= 3");
    struct Component { unsigned long q; std::vector<std::pair<unsigned long, unsigned long>> gens; };
    std::vector<Component> comps;
    unsigned long rest = N;
    for (unsigned long p = 2; rest > 1;) {
        if (rest % p != 0) { ++p; continue; }
        unsigned long q = 1;
        while (rest % p == 0) { rest /= p; q *= p; }
        Component c{q, {}};
        if (p == 2) {
            if (q == 4) c.gens = {{3, 2}};
            else if (q >= 8) c.gens = {{q - 1, 2}, {5, q / 4}};
            // q == 2 contributes the trivial group
        } else {
            unsigned long phi = q / p * (p - 1);
            for (unsigned long g = 2; g < q; ++g) {
                if (gcd_ul(g, q) != 1) continue;
                if (mul_order_mod(g, q) == phi) { c.gens = {{g, phi}}; break; }
            }
        }
        comps.push_back(std::move(c));
    }
    // CRT-lift each component generator to a unit mod N that is 1 mod the others.
    std::vector<std::pair<unsigned long, unsigned long>> out;
    for (const auto& c : comps) {
        unsigned long other = N / c.q;
        for (auto [g, ord] : c.gens) {
            unsigned long lifted = 0;
            for (unsigned long long x = 1; x < N; ++x) {
                if (x % c.q == g % c.q && (other == 1 || x % other == 1)) {
                    lifted = static_cast<unsigned long>(x);
                    break;
                }
            }
            out.emplace_back(lifted, ord);
        }
    }
    return out;
}

/// A subfield K of K_N presented by the subgroup H of (Z/NZ)^x that fixes it.
/// The Q-basis of K is computed eagerly from Gauss periods (orbit sums of
/// powers of zeta under H) pruned to phi(N)/|H| independent vectors.
struct SubfieldSpec {
    CycloField parent;
    std::vector<unsigned long> generators; // of H, sorted
    std::vector<unsigned long> elements;   // all of H, sorted
    std::vector<CycloElem> fixed_basis;

    unsigned long degree_over_Q() const { return parent.degree() / elements.size(); }
    bool is_Q() const { return elements.size() == parent.degree(); }
    bool is_full_field() const { return elements.size() == 1; }

    friend bool operator==(const SubfieldSpec& a, const SubfieldSpec& b) {
        return a.parent == b.parent && a.elements == b.elements;
    }
};

inline std::vector<CycloElem> fixed_field_basis(const CycloField& f,
                                                const std::vector<unsigned long>& elements) {
    unsigned long N = f.conductor();
    std::vector<CycloElem> basis;
    detail::QRowSpan span;
    unsigned long want = f.degree() / elements.size();
    for (unsigned long i = 0; i < std::max<unsigned long>(N, 1) && basis.size() < want; ++i) {
        CycloElem period(f);
        for (unsigned long h : elements)
            period = period + CycloElem::zeta(f, (i * h) % std::max<unsigned long>(N, 1));
        if (period.is_zero()) continue;
        if (span.add(period.coeffs())) basis.push_back(period);
    }
    if (basis.size() != want) throw Error("fixed_field_basis: rank mismatch");
    return basis;
}

inline SubfieldSpec subfield(const CycloField& f, std::vector<unsigned long> generators) {
    unsigned long N = f.conductor();
    SubfieldSpec s;
    s.parent = f;
    s.elements = detail::close_subgroup(std::max<unsigned long>(N, 1), generators);
    for (auto& g : generators) g %= std::max<unsigned long>(N, 1);
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    s.generators = std::move(generators);
    if (s.generators.empty()) s.generators = {1 % std::max<unsigned long>(N, 1)};
    s.fixed_basis = fixed_field_basis(f, s.elements);
    return s;
}

inline SubfieldSpec rational_subfield(const CycloField& f) {
    std::vector<unsigned long> gens;
    if (f.conductor() >= 3)
        for (auto [g, ord] : unit_group_structure(f.conductor())) gens.push_back(g);
    return subfield(f, gens);
}

inline bool is_in_subfield(const CycloElem& a, const SubfieldSpec& H) {
    if (a.field() != H.parent) throw Error("is_in_subfield: element of a different field");
    for (unsigned long g : H.generators)
        if (apply_aut(GaloisAut{g}, a) != a) return false;
    return true;
}

// All subgroups of (Z/NZ)^x for prime-power N, each as its sorted element
// list. Every subgroup of an abelian group is a join of cyclic ones, so the
// closure of the cyclic subgroups under pairwise join is exhaustive.
inline std::vector<std::vector<unsigned long>> enumerate_subgroup_elements(unsigned long N) {
    if (N < 3 || prime_power_of(N).p == 0)
        throw Error("enumerate_subgroups: N must be a prime power >= 3");
    std::vector<unsigned long> units;
    for (unsigned long u = 1; u < N; ++u)
        if (gcd_ul(u, N) == 1) units.push_back(u);
    std::set<std::vector<unsigned long>> groups;
    groups.insert({1});
    for (unsigned long u : units) groups.insert(detail::close_subgroup(N, {u}));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<unsigned long>> cur(groups.begin(), groups.end());
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i + 1; j < cur.size(); ++j) {
                std::vector<unsigned long> gens = cur[i];
                gens.insert(gens.end(), cur[j].begin(), cur[j].end());
                if (groups.insert(detail::close_subgroup(N, gens)).second) grew = true;
            }
    }
    return {groups.begin(), groups.end()};
}

inline std::vector<SubfieldSpec> enumerate_subgroups(const CycloField& f) {
    std::vector<SubfieldSpec> out;
    for (const auto& elems : enumerate_subgroup_elements(f.conductor()))
        out.push_back(subfield(f, elems));
    std::sort(out.begin(), out.end(), [](const SubfieldSpec& a, const SubfieldSpec& b) {
        return a.elements < b.elements;
    });
    return out;
}

// Smallest conductor f | N with K contained in K_f: the units congruent to
// 1 mod f must all lie in H.
inline unsigned long subfield_conductor(const SubfieldSpec& K) {
    unsigned long N = K.parent.conductor();
    std::set<unsigned long> H(K.elements.begin(), K.elements.end());
    for (unsigned long f : divisors_of(N)) {
        bool ok = true;
        for (unsigned long u = 1; u < std::max<unsigned long>(N, 2) && ok; ++u) {
            if (gcd_ul(u, N) != 1) continue;
            if (u % std::max<unsigned long>(f, 1) == 1 % std::max<unsigned long>(f, 1) && !H.count(u)) ok = false;
        }
        if (ok) return f;
    }
    return N;
}

// The same subfield presented inside a larger cyclotomic field K_M, N | M:
// the fixing subgroup becomes the preimage of H under reduction mod N.
inline SubfieldSpec lift_subfield(const SubfieldSpec& K, const CycloField& bigger) {
    unsigned long N = K.parent.conductor(), M = bigger.conductor();
    if (M % N != 0) throw NotADivisor("subfield lift needs N | M");
    std::set<unsigned long> H(K.elements.begin(), K.elements.end());
    std::vector<unsigned long> lifted;
    for (unsigned long u = 1; u < std::max<unsigned long>(M, 2); ++u) {
        if (gcd_ul(u, M) != 1) continue;
        if (H.count(u % N == 0 ? N : u % N) || (N == 1)) lifted.push_back(u);
    }
    if (M == 1) lifted = {0};
    return subfield(bigger, lifted);
}

} // namespace cyclotwist
