#include <catch2/catch.hpp>

#include <random>

#include "cyclotwist/cyclotomic.hpp"
#include "cyclotwist/subfield.hpp"

using namespace cyclotwist;

namespace {

// Test-side oracle: naive rational polynomial division, independent of the
// detail:: helpers used inside the library.
std::vector<Rat> oracle_poly_div(std::vector<Rat> num, const std::vector<Rat>& den) {
    std::vector<Rat> q(num.size() - den.size() + 1, Rat(0));
    while (num.size() >= den.size() && !(num.size() == 1 && num[0] == 0)) {
        Rat f = num.back() / den.back();
        std::size_t shift = num.size() - den.size();
        q[shift] = f;
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= f * den[i];
        while (!num.empty() && num.back() == 0) num.pop_back();
        if (num.empty()) break;
    }
    REQUIRE(num.empty()); // division must be exact
    return q;
}

std::vector<Rat> oracle_poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

CycloElem random_elem(const CycloField& f, std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 3);
    std::vector<Rat> c(f.degree());
    for (auto& x : c) {
        x = Rat(num(rng), den(rng));
        x.canonicalize();
    }
    return CycloElem(f, std::move(c));
}

} // namespace

TEST_CASE("cyclotomic polynomials", "[cyclotomic]") {
    SECTION("N=1 is x - 1") {
        REQUIRE(cyclotomic_polynomial(1) == std::vector<Rat>{Rat(-1), Rat(1)});
    }
    SECTION("N=4 is x^2 + 1") {
        REQUIRE(cyclotomic_polynomial(4) == std::vector<Rat>{Rat(1), Rat(0), Rat(1)});
    }
    SECTION("N=9 matches the division oracle") {
        // Phi_9 = (x^9 - 1) / (Phi_1 * Phi_3)
        std::vector<Rat> x9(10, Rat(0));
        x9[0] = -1;
        x9[9] = 1;
        auto divisor = oracle_poly_mul(cyclotomic_polynomial(1), cyclotomic_polynomial(3));
        auto expected = oracle_poly_div(x9, divisor);
        REQUIRE(cyclotomic_polynomial(9) == expected);
        REQUIRE(expected == std::vector<Rat>{Rat(1), Rat(0), Rat(0), Rat(1), Rat(0), Rat(0), Rat(1)});
    }
    SECTION("product over divisors gives x^N - 1") {
        for (unsigned long N : {2ul, 6ul, 12ul, 30ul, 45ul, 60ul}) {
            std::vector<Rat> prod = {Rat(1)};
            for (unsigned long d : divisors_of(N)) prod = oracle_poly_mul(prod, cyclotomic_polynomial(d));
            std::vector<Rat> expect(N + 1, Rat(0));
            expect[0] = -1;
            expect[N] = 1;
            REQUIRE(prod == expect);
        }
    }
    SECTION("degree is phi(N)") {
        for (unsigned long N : {5ul, 8ul, 9ul, 16ul, 25ul, 27ul})
            REQUIRE(cyclotomic_polynomial(N).size() == euler_phi(N) + 1);
    }
}

TEST_CASE("element arithmetic", "[cyclotomic]") {
    CycloField k4 = CycloField::get(4);
    CycloField k5 = CycloField::get(5);
    CycloField k3 = CycloField::get(3);

    SECTION("zeta_4 squared is -1") {
        CycloElem i = CycloElem::zeta(k4);
        REQUIRE(i * i == CycloElem::from_rational(k4, Rat(-1)));
    }
    SECTION("sum of the primitive fifth roots is -1") {
        CycloElem s = CycloElem::zero(k5);
        for (unsigned long k = 1; k <= 4; ++k) s = s + CycloElem::zeta(k5, k);
        REQUIRE(s == CycloElem::from_rational(k5, Rat(-1)));
    }
    SECTION("division by itself is 1") {
        CycloElem x = CycloElem::one(k3) - CycloElem::zeta(k3);
        REQUIRE(x / x == CycloElem::one(k3));
    }
    SECTION("division by zero throws") {
        REQUIRE_THROWS_AS(CycloElem::one(k5) / CycloElem::zero(k5), DivisionByZero);
    }
    SECTION("inverse round-trips on random elements") {
        std::mt19937 rng(42);
        for (int i = 0; i < 20; ++i) {
            CycloElem x = random_elem(k5, rng);
            if (x.is_zero()) continue;
            REQUIRE(x * x.inverse() == CycloElem::one(k5));
        }
    }
}

TEST_CASE("galois action", "[cyclotomic]") {
    CycloField k5 = CycloField::get(5);
    std::mt19937 rng(7);

    SECTION("sigma_1 is the identity") {
        for (int i = 0; i < 10; ++i) {
            CycloElem x = random_elem(k5, rng);
            REQUIRE(apply_aut(GaloisAut{1}, x) == x);
        }
    }
    SECTION("sigma_2 sends zeta_5 to zeta_5^2") {
        REQUIRE(apply_aut(GaloisAut{2}, CycloElem::zeta(k5)) == CycloElem::zeta(k5, 2));
    }
    SECTION("sigma_4 fixes zeta + zeta^4") {
        CycloElem period = CycloElem::zeta(k5, 1) + CycloElem::zeta(k5, 4);
        REQUIRE(apply_aut(GaloisAut{4}, period) == period);
    }
    SECTION("non-unit throws") {
        REQUIRE_THROWS_AS(apply_aut(GaloisAut{5}, CycloElem::zeta(k5)), NotAUnit);
    }
    SECTION("ring homomorphism on random pairs") {
        for (unsigned long N : {8ul, 9ul}) {
            CycloField f = CycloField::get(N);
            for (unsigned long d = 1; d < N; ++d) {
                if (gcd_ul(d, N) != 1) continue;
                CycloElem x = random_elem(f, rng), y = random_elem(f, rng);
                GaloisAut s{d};
                REQUIRE(apply_aut(s, x + y) == apply_aut(s, x) + apply_aut(s, y));
                REQUIRE(apply_aut(s, x * y) == apply_aut(s, x) * apply_aut(s, y));
            }
        }
    }
    SECTION("composition law sigma_d sigma_e = sigma_de") {
        CycloField k9 = CycloField::get(9);
        for (unsigned long d : {2ul, 4ul, 5ul, 7ul, 8ul})
            for (unsigned long e : {2ul, 4ul, 5ul, 7ul, 8ul}) {
                CycloElem x = random_elem(k9, rng);
                REQUIRE(apply_aut(GaloisAut{d}, apply_aut(GaloisAut{e}, x)) ==
                        apply_aut(GaloisAut{(d * e) % 9}, x));
            }
    }
}

TEST_CASE("unit group structure", "[cyclotomic]") {
    // Oracle: exhaustive order checks.
    REQUIRE(mul_order_mod(2, 9) == 6);
    REQUIRE(unit_group_structure(9) ==
            std::vector<std::pair<unsigned long, unsigned long>>{{2, 6}});
    REQUIRE(unit_group_structure(8) ==
            std::vector<std::pair<unsigned long, unsigned long>>{{7, 2}, {5, 2}});
    REQUIRE(mul_order_mod(2, 5) == 4);
    REQUIRE(unit_group_structure(5) ==
            std::vector<std::pair<unsigned long, unsigned long>>{{2, 4}});
    SECTION("orders multiply to phi(N)") {
        for (unsigned long N : {3ul, 4ul, 5ul, 7ul, 8ul, 9ul, 16ul, 25ul, 27ul, 32ul}) {
            unsigned long prod = 1;
            for (auto [g, ord] : unit_group_structure(N)) {
                REQUIRE(mul_order_mod(g, N) == ord);
                prod *= ord;
            }
            REQUIRE(prod == euler_phi(N));
        }
    }
}

TEST_CASE("subgroup enumeration", "[cyclotomic]") {
    REQUIRE(enumerate_subgroup_elements(9).size() == 4);  // subgroup lattice of C_6
    REQUIRE(enumerate_subgroup_elements(8).size() == 5);  // C_2 x C_2
    REQUIRE(enumerate_subgroup_elements(3).size() == 2);
    SECTION("subfield count matches the divisor-count formula for cyclic cases") {
        // Subfields of K_{p^M} containing Q correspond to subgroups of the
        // cyclic unit group, counted by the number of divisors of p^(M-1)(p-1).
        auto count_divisors = [](unsigned long n) { return divisors_of(n).size(); };
        REQUIRE(enumerate_subgroup_elements(3).size() == count_divisors(2));
        REQUIRE(enumerate_subgroup_elements(9).size() == count_divisors(3 * 2));
        REQUIRE(enumerate_subgroup_elements(27).size() == count_divisors(9 * 2));
        REQUIRE(enumerate_subgroup_elements(5).size() == count_divisors(4));
        REQUIRE(enumerate_subgroup_elements(25).size() == count_divisors(5 * 4));
        REQUIRE(enumerate_subgroup_elements(7).size() == count_divisors(6));
    }
}

TEST_CASE("fixed field bases", "[cyclotomic]") {
    CycloField k5 = CycloField::get(5);

    SECTION("quadratic subfield of K_5") {
        SubfieldSpec K = subfield(k5, {4});
        REQUIRE(K.elements == std::vector<unsigned long>{1, 4});
        REQUIRE(K.fixed_basis.size() == 2);
        // The period zeta + zeta^4 lies in the fixed field and satisfies
        // x^2 + x - 1 = 0 (oracle for the Q(sqrt 5) identification).
        CycloElem p = CycloElem::zeta(k5, 1) + CycloElem::zeta(k5, 4);
        REQUIRE(p * p + p - CycloElem::one(k5) == CycloElem::zero(k5));
        REQUIRE(is_in_subfield(p, K));
        // basis spans it: p, 1 and the two basis vectors all live in a rank-2 space
        detail::QRowSpan span;
        for (const auto& b : K.fixed_basis) span.add(b.coeffs());
        REQUIRE(span.contains(p.coeffs()));
        REQUIRE(span.contains(CycloElem::one(k5).coeffs()));
    }
    SECTION("full group fixes Q") {
        SubfieldSpec K = rational_subfield(k5);
        REQUIRE(K.fixed_basis.size() == 1);
        REQUIRE(K.fixed_basis[0].is_rational());
    }
    SECTION("trivial group fixes everything") {
        SubfieldSpec K = subfield(k5, {1});
        REQUIRE(K.fixed_basis.size() == 4);
    }
    SECTION("every Gauss period lies in the basis span") {
        for (unsigned long N : {8ul, 9ul}) {
            CycloField f = CycloField::get(N);
            for (const auto& K : enumerate_subgroups(f)) {
                detail::QRowSpan span;
                for (const auto& b : K.fixed_basis) span.add(b.coeffs());
                for (unsigned long i = 0; i < N; ++i) {
                    CycloElem period(f);
                    for (unsigned long h : K.elements)
                        period = period + CycloElem::zeta(f, (i * h) % N);
                    REQUIRE(span.contains(period.coeffs()));
                }
            }
        }
    }
}

TEST_CASE("subfield membership", "[cyclotomic]") {
    CycloField k5 = CycloField::get(5);
    SubfieldSpec K = subfield(k5, {4});
    REQUIRE(is_in_subfield(CycloElem::from_rational(k5, Rat(3, 2)), K));
    REQUIRE_FALSE(is_in_subfield(CycloElem::zeta(k5), K));
    REQUIRE(is_in_subfield(CycloElem::zeta(k5, 1) + CycloElem::zeta(k5, 4), K));
}

TEST_CASE("relative norms", "[cyclotomic]") {
    CycloField k5 = CycloField::get(5);
    std::vector<GaloisAut> G = {GaloisAut{1}, GaloisAut{2}, GaloisAut{3}, GaloisAut{4}};

    REQUIRE(relative_norm(CycloElem::one(k5), G) == CycloElem::one(k5));
    SECTION("norm of 1 - zeta_5 is Phi_5(1) = 5") {
        auto phi5 = cyclotomic_polynomial(5);
        Rat at_one = 0;
        for (const auto& c : phi5) at_one += c;
        REQUIRE(at_one == 5);
        CycloElem x = CycloElem::one(k5) - CycloElem::zeta(k5);
        REQUIRE(relative_norm(x, G) == CycloElem::from_rational(k5, Rat(5)));
    }
    SECTION("norm of zeta_5 is 1") {
        REQUIRE(relative_norm(CycloElem::zeta(k5), G) == CycloElem::one(k5));
    }
    SECTION("norm lands in the fixed field") {
        std::mt19937 rng(3);
        SubfieldSpec Q = rational_subfield(k5);
        for (int i = 0; i < 10; ++i)
            REQUIRE(is_in_subfield(relative_norm(random_elem(k5, rng), G), Q));
    }
}

TEST_CASE("embeddings between cyclotomic fields", "[cyclotomic]") {
    CycloField k3 = CycloField::get(3);
    CycloField k9 = CycloField::get(9);

    REQUIRE(embed(CycloElem::one(k3), k9) == CycloElem::one(k9));
    REQUIRE(embed(CycloElem::zeta(k3), k9) == CycloElem::zeta(k9, 3));
    REQUIRE_THROWS_AS(embed(CycloElem::zeta(CycloField::get(4)), k9), NotADivisor);

    SECTION("restriction of sigma_4 on K_9 to K_3 is sigma_1") {
        CycloElem z = embed(CycloElem::zeta(k3), k9);
        REQUIRE(apply_aut(GaloisAut{4}, z) == z); // 4 = 1 mod 3
    }
    SECTION("embedding is injective and multiplicative on random samples") {
        std::mt19937 rng(11);
        for (int i = 0; i < 15; ++i) {
            CycloElem x = random_elem(k3, rng), y = random_elem(k3, rng);
            REQUIRE(embed(x * y, k9) == embed(x, k9) * embed(y, k9));
            if (x != y) REQUIRE(embed(x, k9) != embed(y, k9));
        }
    }
    SECTION("galois action commutes with embedding") {
        std::mt19937 rng(13);
        for (unsigned long d : {2ul, 4ul, 7ul}) { // units mod 9, restricting to d mod 3
            CycloElem x = random_elem(k3, rng);
            REQUIRE(apply_aut(GaloisAut{d}, embed(x, k9)) ==
                    embed(apply_aut(GaloisAut{d % 3}, x), k9));
        }
    }
}

TEST_CASE("subfield conductor and lifting", "[cyclotomic]") {
    CycloField k9 = CycloField::get(9);
    SECTION("K_9 itself has conductor 9") {
        REQUIRE(subfield_conductor(subfield(k9, {1})) == 9);
    }
    SECTION("Q has conductor 1") {
        REQUIRE(subfield_conductor(rational_subfield(k9)) == 1);
    }
    SECTION("K_3 inside K_9 has conductor 3") {
        // fixed by the units congruent to 1 mod 3: {1, 4, 7}
        REQUIRE(subfield_conductor(subfield(k9, {4})) == 3);
    }
    SECTION("lifting preserves the fixed field") {
        CycloField k3 = CycloField::get(3);
        SubfieldSpec K3_as_K3 = subfield(k3, {1});
        SubfieldSpec lifted = lift_subfield(K3_as_K3, k9);
        REQUIRE(lifted.elements == std::vector<unsigned long>{1, 4, 7});
        REQUIRE(is_in_subfield(embed(CycloElem::zeta(k3), k9), lifted));
        REQUIRE_FALSE(is_in_subfield(CycloElem::zeta(k9), lifted));
    }
}
