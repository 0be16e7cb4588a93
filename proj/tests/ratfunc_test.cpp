#include <catch2/catch.hpp>

#include <random>

#include "cyclotwist/ratfunc.hpp"
#include "cyclotwist/series.hpp"

using namespace cyclotwist;

namespace {

Poly poly_from_rats(const CycloField& f, std::initializer_list<long> cs) {
    std::vector<CycloElem> v;
    for (long c : cs) v.push_back(CycloElem::from_rational(f, Rat(c)));
    return Poly(f, std::move(v));
}

RatFunc rf(const CycloField& f, std::initializer_list<long> num, std::initializer_list<long> den) {
    return RatFunc(poly_from_rats(f, num), poly_from_rats(f, den));
}

CycloElem random_elem(const CycloField& f, std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-3, 3);
    std::vector<Rat> c(f.degree());
    for (auto& x : c) x = Rat(num(rng));
    return CycloElem(f, std::move(c));
}

Mobius random_mobius(const CycloField& f, std::mt19937& rng) {
    for (;;) {
        CycloElem a = random_elem(f, rng), b = random_elem(f, rng);
        CycloElem c = random_elem(f, rng), d = random_elem(f, rng);
        if (!(a * d - b * c).is_zero()) return Mobius(a, b, c, d);
    }
}

RatFunc random_ratfunc(const CycloField& f, std::mt19937& rng, long deg) {
    for (;;) {
        std::vector<CycloElem> n, d;
        for (long i = 0; i <= deg; ++i) n.push_back(random_elem(f, rng));
        for (long i = 0; i < deg; ++i) d.push_back(random_elem(f, rng));
        d.push_back(CycloElem::one(f));
        Poly num(f, n), den(f, d);
        if (num.degree() < 1 && den.degree() < 1) continue;
        if (gcd(num, den).degree() != 0) continue;
        RatFunc r(num, den);
        if (r.degree() == deg) return r;
    }
}

} // namespace

TEST_CASE("polynomial basics", "[ratfunc]") {
    CycloField q = CycloField::get(1);
    Poly p = poly_from_rats(q, {1, 2, 1}); // 1 + 2t + t^2
    SECTION("divrem is exact on products") {
        Poly d = poly_from_rats(q, {1, 1});
        auto [quot, rem] = divrem(p, d);
        REQUIRE(rem.is_zero());
        REQUIRE(quot == d);
    }
    SECTION("gcd of (t+1)^2 and (t+1)(t-1) is t+1") {
        Poly a = poly_from_rats(q, {1, 2, 1});
        Poly b = poly_from_rats(q, {-1, 0, 1});
        REQUIRE(gcd(a, b) == poly_from_rats(q, {1, 1}));
    }
    SECTION("squarefree part strips multiplicity") {
        Poly a = poly_from_rats(q, {1, 2, 1});
        REQUIRE(a.squarefree_part() == poly_from_rats(q, {1, 1}));
    }
    SECTION("gcd over K_9 with non-rational coefficients") {
        CycloField k9 = CycloField::get(9);
        Poly lin(k9, {-CycloElem::zeta(k9), CycloElem::one(k9)}); // t - zeta
        Poly a = lin * poly_from_rats(k9, {1, 1});
        Poly b = lin * poly_from_rats(k9, {2, 0, 1});
        REQUIRE(gcd(a, b) == lin.monic());
    }
}

TEST_CASE("mobius composition", "[ratfunc]") {
    CycloField q = CycloField::get(1);
    SECTION("t^2 shifted by [[1,1],[0,1]] is (t+1)^2") {
        RatFunc pi = rf(q, {0, 0, 1}, {1});
        Mobius g = Mobius::from_rationals(q, 1, 1, 0, 1);
        REQUIRE(compose_mobius(pi, g) == rf(q, {1, 2, 1}, {1}));
    }
    SECTION("identity acts trivially") {
        std::mt19937 rng(5);
        CycloField k5 = CycloField::get(5);
        RatFunc pi = random_ratfunc(k5, rng, 3);
        REQUIRE(compose_mobius(pi, Mobius::identity(k5)) == pi);
    }
    SECTION("t^3 through the inversion is 1/t^3") {
        RatFunc pi = rf(q, {0, 0, 0, 1}, {1});
        Mobius w = Mobius::from_rationals(q, 0, 1, 1, 0);
        REQUIRE(compose_mobius(pi, w) == rf(q, {1}, {0, 0, 0, 1}));
    }
    SECTION("right action: (pi . g) . h = pi . (g h)") {
        std::mt19937 rng(8);
        CycloField k8 = CycloField::get(8);
        for (int i = 0; i < 5; ++i) {
            RatFunc pi = random_ratfunc(k8, rng, 2);
            Mobius g = random_mobius(k8, rng), h = random_mobius(k8, rng);
            REQUIRE(compose_mobius(compose_mobius(pi, g), h) == compose_mobius(pi, g * h));
        }
    }
    SECTION("galois equivariance of composition") {
        std::mt19937 rng(9);
        CycloField k8 = CycloField::get(8);
        for (unsigned long d : {3ul, 5ul, 7ul}) {
            RatFunc pi = random_ratfunc(k8, rng, 2);
            Mobius g = random_mobius(k8, rng);
            GaloisAut s{d};
            REQUIRE(apply_aut(s, compose_mobius(pi, g)) ==
                    compose_mobius(apply_aut(s, pi), apply_aut(s, g)));
        }
    }
    SECTION("evaluation compatibility at non-pole points") {
        std::mt19937 rng(10);
        CycloField k5 = CycloField::get(5);
        for (int i = 0; i < 5; ++i) {
            RatFunc pi = random_ratfunc(k5, rng, 2);
            Mobius g = random_mobius(k5, rng);
            P1Point t = P1Point::at(CycloElem::from_rational(k5, Rat(i + 2)));
            REQUIRE(evaluate(compose_mobius(pi, g), t) == evaluate(pi, g.apply(t)));
        }
    }
}

TEST_CASE("galois action on rational functions", "[ratfunc]") {
    CycloField k3 = CycloField::get(3);
    SECTION("rational coefficients are fixed") {
        RatFunc pi = rf(k3, {1, 0, 2}, {0, 1});
        REQUIRE(apply_aut(GaloisAut{2}, pi) == pi);
    }
    SECTION("zeta_3 t maps to zeta_3^2 t under sigma_2") {
        RatFunc pi = RatFunc(Poly(k3, {CycloElem::zero(k3), CycloElem::zeta(k3)}),
                             Poly::constant(k3, CycloElem::one(k3)));
        RatFunc expect = RatFunc(Poly(k3, {CycloElem::zero(k3), CycloElem::zeta(k3, 2)}),
                                 Poly::constant(k3, CycloElem::one(k3)));
        REQUIRE(apply_aut(GaloisAut{2}, pi) == expect);
    }
    SECTION("composition of automorphisms") {
        std::mt19937 rng(12);
        CycloField k9 = CycloField::get(9);
        RatFunc pi = random_ratfunc(k9, rng, 2);
        for (unsigned long d : {2ul, 4ul, 5ul, 7ul, 8ul})
            for (unsigned long e : {2ul, 4ul, 5ul, 7ul, 8ul})
                REQUIRE(apply_aut(GaloisAut{d}, apply_aut(GaloisAut{e}, pi)) ==
                        apply_aut(GaloisAut{(d * e) % 9}, pi));
    }
}

TEST_CASE("coefficient membership", "[ratfunc]") {
    CycloField k5 = CycloField::get(5);
    SubfieldSpec K = subfield(k5, {4});
    SECTION("rational map is defined everywhere") {
        REQUIRE(coefficients_in(rf(k5, {2, 0, 0, 1}, {1}), K));
    }
    SECTION("zeta_5 t is not defined over the quadratic subfield") {
        RatFunc pi(Poly(k5, {CycloElem::zero(k5), CycloElem::zeta(k5)}),
                   Poly::constant(k5, CycloElem::one(k5)));
        REQUIRE_FALSE(coefficients_in(pi, K));
    }
    SECTION("the period coefficient is") {
        RatFunc pi(Poly(k5, {CycloElem::zero(k5), CycloElem::zeta(k5, 1) + CycloElem::zeta(k5, 4)}),
                   Poly::constant(k5, CycloElem::one(k5)));
        REQUIRE(coefficients_in(pi, K));
    }
    SECTION("invariant under common rescaling of num and den") {
        CycloElem s = CycloElem::zeta(k5) + CycloElem::from_rational(k5, Rat(2));
        Poly num = poly_from_rats(k5, {2, 0, 1}) * s;
        Poly den = poly_from_rats(k5, {0, 1}) * s;
        REQUIRE(coefficients_in(RatFunc(num, den), K));
    }
}

TEST_CASE("evaluation with poles and infinity", "[ratfunc]") {
    CycloField q = CycloField::get(1);
    SECTION("1/t at 0 is infinity") {
        RatFunc pi = rf(q, {1}, {0, 1});
        REQUIRE(evaluate(pi, P1Point::at(CycloElem::zero(q))).infinite);
    }
    SECTION("(t^2+1)/(t-1) at 2 is 5") {
        RatFunc pi = rf(q, {1, 0, 1}, {-1, 1});
        REQUIRE(evaluate(pi, P1Point::at(CycloElem::from_rational(q, Rat(2)))) ==
                P1Point::at(CycloElem::from_rational(q, Rat(5))));
    }
    SECTION("t^3 at infinity is infinity") {
        RatFunc pi = rf(q, {0, 0, 0, 1}, {1});
        REQUIRE(evaluate(pi, P1Point::inf(q)).infinite);
    }
    SECTION("degree-balanced value at infinity is the leading ratio") {
        RatFunc pi = rf(q, {1, 3}, {2, 1});
        REQUIRE(evaluate(pi, P1Point::inf(q)) == P1Point::at(CycloElem::from_rational(q, Rat(3))));
    }
}

TEST_CASE("mobius group operations", "[ratfunc]") {
    CycloField k8 = CycloField::get(8);
    std::mt19937 rng(21);
    SECTION("g times its inverse is the identity") {
        for (int i = 0; i < 10; ++i) {
            Mobius g = random_mobius(k8, rng);
            REQUIRE(projectively_equal(g * g.inverse(), Mobius::identity(k8)));
        }
    }
    SECTION("scalar matrices equal the identity projectively") {
        Mobius two = Mobius::from_rationals(k8, 2, 0, 0, 2);
        REQUIRE(projectively_equal(two, Mobius::identity(k8)));
    }
    SECTION("the inversion squares to the identity") {
        Mobius w = Mobius::from_rationals(k8, 0, 1, 1, 0);
        REQUIRE(projectively_equal(w * w, Mobius::identity(k8)));
    }
    SECTION("singular input throws") {
        REQUIRE_THROWS_AS(Mobius::from_rationals(k8, 1, 2, 2, 4), SingularMatrix);
    }
    SECTION("mobius through three points") {
        std::array<P1Point, 3> src = {P1Point::at(CycloElem::zero(k8)),
                                      P1Point::at(CycloElem::one(k8)), P1Point::inf(k8)};
        for (int i = 0; i < 5; ++i) {
            Mobius g = random_mobius(k8, rng);
            std::array<P1Point, 3> dst = {g.apply(src[0]), g.apply(src[1]), g.apply(src[2])};
            Mobius h = mobius_through(k8, src, dst);
            REQUIRE(projectively_equal(g, h));
        }
    }
}

TEST_CASE("laurent series arithmetic", "[ratfunc][series]") {
    CycloField q = CycloField::get(1);
    auto one = CycloElem::one(q);

    SECTION("(q^-1 + q)^2 = q^-2 + 2 + q^2") {
        LaurentSeries h(q, 1, -1, LaurentSeries::kExact, {one, CycloElem::zero(q), one});
        LaurentSeries sq = h * h;
        REQUIRE(sq.coeff(-2) == one);
        REQUIRE(sq.coeff(0) == CycloElem::from_rational(q, Rat(2)));
        REQUIRE(sq.coeff(2) == one);
        REQUIRE(sq.coeff(-1).is_zero());
        REQUIRE(sq.coeff(57).is_zero()); // exact series: everything known
    }
    SECTION("precision flows through products") {
        LaurentSeries a(q, 1, -1, 4, {one, one, one, one, one}); // known on [-1,4)
        LaurentSeries sq = a * a;
        REQUIRE(sq.precision() == 3); // min(4 + -1, 4 + -1)
        REQUIRE(sq.valuation() == -2);
        REQUIRE_THROWS_AS(sq.coeff(3), InsufficientPrecision);
    }
    SECTION("inverse of q^-1(1 - q) to relative precision") {
        LaurentSeries a(q, 1, -1, 5, {one, -one});
        LaurentSeries inv = a.inverse();
        REQUIRE(inv.valuation() == 1);
        // 1/(q^-1 - 1) = q + q^2 + q^3 + ...
        REQUIRE(inv.coeff(1) == one);
        REQUIRE(inv.coeff(2) == one);
        REQUIRE(inv.coeff(3) == one);
    }
    SECTION("identity composition returns the series") {
        RatFunc t = RatFunc::variable(q);
        LaurentSeries h(q, 1, -1, 6, {one, CycloElem::from_rational(q, Rat(7)), one});
        LaurentSeries c = series_compose(t, h);
        for (long e = -1; e < 6; ++e) REQUIRE(c.coeff(e) == h.coeff(e));
    }
    SECTION("t^2 composed with q^-1 + q") {
        Poly num(q, {CycloElem::zero(q), CycloElem::zero(q), one});
        RatFunc pi(num, Poly::constant(q, one));
        LaurentSeries h(q, 1, -1, 8, {one, CycloElem::zero(q), one});
        LaurentSeries c = series_compose(pi, h);
        REQUIRE(c.coeff(-2) == one);
        REQUIRE(c.coeff(0) == CycloElem::from_rational(q, Rat(2)));
        REQUIRE(c.coeff(2) == one);
    }
    SECTION("recomputation at lower precision is a prefix") {
        Poly num(q, {one, CycloElem::zero(q), one, one});
        RatFunc pi(num, Poly(q, {CycloElem::zero(q), one}));
        LaurentSeries h(q, 1, -1, 9, {one, one, CycloElem::zero(q), one, one, one, one, one, one, one});
        LaurentSeries full = series_compose(pi, h);
        LaurentSeries lower = series_compose(pi, h.truncated(5));
        for (long e = lower.valuation(); e < lower.precision(); ++e)
            REQUIRE(lower.coeff(e) == full.coeff(e));
    }
}

TEST_CASE("j-invariant expansion", "[ratfunc][series]") {
    CycloField q = CycloField::get(1);
    LaurentSeries j = j_expansion(q, 3);
    REQUIRE(j.coeff(-1) == CycloElem::one(q));
    REQUIRE(j.coeff(0) == CycloElem::from_rational(q, Rat(744)));
    REQUIRE(j.coeff(1) == CycloElem::from_rational(q, Rat(196884)));
    REQUIRE(j.coeff(2) == CycloElem::from_rational(q, Rat(21493760)));
}
