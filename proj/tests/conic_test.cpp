#include <catch2/catch.hpp>

#include <random>

#include "cyclotwist/trivialize.hpp"

using namespace cyclotwist;

namespace {

CycloElem random_small(const CycloField& f, std::mt19937& rng) {
    std::uniform_int_distribution<long> d(-2, 2);
    std::vector<Rat> c(f.degree());
    for (auto& x : c) x = Rat(d(rng));
    return CycloElem(f, std::move(c));
}

Mobius random_mobius(const CycloField& f, std::mt19937& rng) {
    for (;;) {
        CycloElem a = random_small(f, rng), b = random_small(f, rng);
        CycloElem c = random_small(f, rng), d = random_small(f, rng);
        if (!(a * d - b * c).is_zero()) return Mobius(a, b, c, d);
    }
}

ConicForm diagonal_form_over_Q(const CycloField& q, long a, long b, long c) {
    SqMat g(q, 3);
    g.at(0, 0) = CycloElem::from_rational(q, Rat(a));
    g.at(1, 1) = CycloElem::from_rational(q, Rat(b));
    g.at(2, 2) = CycloElem::from_rational(q, Rat(c));
    return ConicForm{g, rational_subfield(q)};
}

// oracle: exhaustive projective search at bounded height
bool oracle_has_point(long a, long b, long c, long H) {
    for (long x = -H; x <= H; ++x)
        for (long y = -H; y <= H; ++y)
            for (long z = -H; z <= H; ++z) {
                if (x == 0 && y == 0 && z == 0) continue;
                if (a * x * x + b * y * y + c * z * z == 0) return true;
            }
    return false;
}

} // namespace

TEST_CASE("phi transfer map", "[conic]") {
    CycloField q = CycloField::get(1);
    CycloField k8 = CycloField::get(8);

    SECTION("identity maps to identity") {
        REQUIRE(phi_transfer(Mobius::identity(q)) == SqMat::identity(q, 3));
    }
    SECTION("the inversion maps to the anti-diagonal") {
        SqMat m = phi_transfer(Mobius::from_rationals(q, 0, 1, 1, 0));
        SqMat expect(q, 3);
        expect.at(0, 2) = CycloElem::from_rational(q, Rat(-1));
        expect.at(1, 1) = CycloElem::from_rational(q, Rat(-1));
        expect.at(2, 0) = CycloElem::from_rational(q, Rat(-1));
        REQUIRE(m == expect);
        REQUIRE(m * m == SqMat::identity(q, 3));
    }
    SECTION("independent of the projective representative") {
        std::mt19937 rng(3);
        Mobius g = random_mobius(k8, rng);
        Mobius g2(g.a() * Rat(3), g.b() * Rat(3), g.c() * Rat(3), g.d() * Rat(3));
        REQUIRE(phi_transfer(g) == phi_transfer(g2));
    }
    SECTION("group homomorphism on random pairs") {
        std::mt19937 rng(5);
        for (int i = 0; i < 5; ++i) {
            Mobius g = random_mobius(k8, rng), h = random_mobius(k8, rng);
            REQUIRE(phi_transfer(g * h) == phi_transfer(g) * phi_transfer(h));
        }
    }
    SECTION("determinant 1 and Q0 preservation") {
        std::mt19937 rng(7);
        for (int i = 0; i < 10; ++i) {
            Mobius g = random_mobius(k8, rng);
            SqMat m = phi_transfer(g);
            REQUIRE(m.det() == CycloElem::one(k8));
            REQUIRE(m.transpose() * q0_gram(k8) * m == q0_gram(k8));
        }
    }
    SECTION("galois equivariance") {
        std::mt19937 rng(9);
        Mobius g = random_mobius(k8, rng);
        for (unsigned long d : {3ul, 5ul, 7ul})
            REQUIRE(phi_transfer(apply_aut(GaloisAut{d}, g)) ==
                    apply_aut(GaloisAut{d}, phi_transfer(g)));
    }
}

TEST_CASE("conic from a cocycle", "[conic]") {
    SECTION("trivial cocycle gives a K-form equivalent to Q0") {
        CycloField k5 = CycloField::get(5);
        GalGroup G = galois_group(k5, rational_subfield(k5));
        auto [C, M] = conic_from_cocycle(Cocycle::trivial(G));
        C.validate();
        // M is a K-matrix here, so the form must have a rational point
        REQUIRE(has_point_over_Q(C).solvable());
    }
    SECTION("a planted coboundary over K_5/Q yields a solvable conic") {
        CycloField k5 = CycloField::get(5);
        GalGroup G = galois_group(k5, rational_subfield(k5));
        std::mt19937 rng(11);
        Cocycle z = Cocycle::coboundary(G, random_mobius(k5, rng));
        auto [C, M] = conic_from_cocycle(z);
        QPointResult r = has_point_over_Q(C);
        REQUIRE(r.solvable());
        REQUIRE(C.evaluate(r.point->xyz).is_zero());
    }
    SECTION("coefficients are fixed by the Galois action") {
        CycloField k8 = CycloField::get(8);
        GalGroup G = galois_group(k8, rational_subfield(k8));
        std::mt19937 rng(13);
        Cocycle z = Cocycle::coboundary(G, random_mobius(k8, rng));
        auto [C, M] = conic_from_cocycle(z);
        for (unsigned long d : G.elements)
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j)
                    REQUIRE(apply_aut(GaloisAut{d}, C.gram.at(i, j)) == C.gram.at(i, j));
    }
}

TEST_CASE("diagonalization", "[conic]") {
    CycloField q = CycloField::get(1);
    SECTION("Q0 diagonalizes to an isotropic form") {
        ConicForm Q0{q0_gram(q), rational_subfield(q)};
        auto [diag, T] = diagonalize(Q0);
        for (const auto& d : diag) REQUIRE_FALSE(d.is_zero());
        REQUIRE(T.transpose() * Q0.gram * T ==
                SqMat(q, 3,
                      {diag[0], CycloElem::zero(q), CycloElem::zero(q), CycloElem::zero(q), diag[1],
                       CycloElem::zero(q), CycloElem::zero(q), CycloElem::zero(q), diag[2]}));
        // signature (2,1) up to scaling: the diagonal form is solvable
        SqMat D(q, 3);
        for (int i = 0; i < 3; ++i) D.at(i, i) = diag[i];
        REQUIRE(has_point_over_Q(ConicForm{D, rational_subfield(q)}).solvable());
    }
    SECTION("already diagonal input is unchanged") {
        ConicForm D = diagonal_form_over_Q(q, 2, 3, -5);
        auto [diag, T] = diagonalize(D);
        REQUIRE(T == SqMat::identity(q, 3));
        REQUIRE(diag[0] == CycloElem::from_rational(q, Rat(2)));
    }
    SECTION("subfield coefficients stay in the subfield") {
        CycloField k5 = CycloField::get(5);
        SubfieldSpec K = subfield(k5, {4});
        CycloElem period = CycloElem::zeta(k5, 1) + CycloElem::zeta(k5, 4);
        SqMat g(k5, 3);
        g.at(0, 0) = CycloElem::one(k5);
        g.at(0, 1) = period;
        g.at(1, 0) = period;
        g.at(1, 1) = CycloElem::from_rational(k5, Rat(2));
        g.at(2, 2) = -CycloElem::one(k5);
        ConicForm Q{g, K};
        Q.validate();
        auto [diag, T] = diagonalize(Q);
        for (const auto& d : diag) REQUIRE(is_in_subfield(d, K));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) REQUIRE(is_in_subfield(T.at(i, j), K));
    }
}

TEST_CASE("rational points on conics over Q", "[conic]") {
    CycloField q = CycloField::get(1);
    SECTION("pythagorean form has a point") {
        QPointResult r = has_point_over_Q(diagonal_form_over_Q(q, 1, 1, -1));
        REQUIRE(r.solvable());
    }
    SECTION("definite form has no point") {
        QPointResult r = has_point_over_Q(diagonal_form_over_Q(q, 1, 1, 1));
        REQUIRE_FALSE(r.solvable());
        REQUIRE(r.insolubility_witness == "real place");
    }
    SECTION("x^2 + y^2 - 3z^2 fails at 3") {
        QPointResult r = has_point_over_Q(diagonal_form_over_Q(q, 1, 1, -3));
        REQUIRE_FALSE(r.solvable());
        REQUIRE(r.insolubility_witness == "prime 3");
    }
    SECTION("agreement with the exhaustive oracle on random diagonal forms") {
        std::mt19937 rng(17);
        std::uniform_int_distribution<long> coeff(-10, 10);
        int checked = 0;
        while (checked < 15) {
            long a = coeff(rng), b = coeff(rng), c = coeff(rng);
            if (a == 0 || b == 0 || c == 0) continue;
            ++checked;
            QPointResult r = has_point_over_Q(diagonal_form_over_Q(q, a, b, c));
            bool oracle = oracle_has_point(a, b, c, 50);
            REQUIRE(r.solvable() == oracle);
            if (r.solvable()) {
                const auto& p = r.point->xyz;
                CycloElem val = p[0] * p[0] * Rat(a) + p[1] * p[1] * Rat(b) + p[2] * p[2] * Rat(c);
                REQUIRE(val.is_zero());
            }
        }
    }
    SECTION("non-diagonal gram with denominators") {
        SqMat g(q, 3);
        g.at(0, 0) = CycloElem::from_rational(q, Rat(1, 2));
        g.at(0, 1) = CycloElem::from_rational(q, Rat(1, 3));
        g.at(1, 0) = CycloElem::from_rational(q, Rat(1, 3));
        g.at(1, 1) = CycloElem::from_rational(q, Rat(-1));
        g.at(2, 2) = CycloElem::from_rational(q, Rat(1));
        ConicForm Q{g, rational_subfield(q)};
        QPointResult r = has_point_over_Q(Q);
        if (r.solvable()) REQUIRE(Q.evaluate(r.point->xyz).is_zero());
    }
}

TEST_CASE("point search over subfields", "[conic]") {
    SECTION("an obvious point is found within a tiny budget") {
        CycloField q = CycloField::get(1);
        SqMat g(q, 3); // 2xy + y^2 + z^2: [1:0:0] and friends at height 1
        g.at(0, 1) = CycloElem::one(q);
        g.at(1, 0) = CycloElem::one(q);
        g.at(1, 1) = CycloElem::one(q);
        g.at(2, 2) = CycloElem::one(q);
        ConicForm Q{g, rational_subfield(q)};
        auto P = search_point_over_K(Q, 50);
        REQUIRE(P);
        REQUIRE(Q.evaluate(P->xyz).is_zero());
    }
    SECTION("Q0 over the quadratic subfield of K_5") {
        CycloField k5 = CycloField::get(5);
        ConicForm Q0{q0_gram(k5), subfield(k5, {4})};
        auto P = search_point_over_K(Q0);
        REQUIRE(P);
        REQUIRE(Q0.evaluate(P->xyz).is_zero());
    }
    SECTION("planted coboundary over Q(sqrt 5) has a findable point") {
        CycloField k5 = CycloField::get(5);
        SubfieldSpec K = subfield(k5, {4});
        GalGroup G = galois_group(k5, K);
        Cocycle z = Cocycle::coboundary(G, Mobius::scaling(CycloElem::zeta(k5)));
        auto [C, M] = conic_from_cocycle(z);
        auto P = search_point_over_K(C);
        REQUIRE(P);
        REQUIRE(C.evaluate(P->xyz).is_zero());
    }
}

TEST_CASE("trivializer from a conic point", "[conic]") {
    SECTION("full conic route round trip over K_4/Q") {
        CycloField k4 = CycloField::get(4);
        GalGroup G = galois_group(k4, rational_subfield(k4));
        std::mt19937 rng(23);
        Cocycle z = Cocycle::coboundary(G, random_mobius(k4, rng));
        auto [C, M] = conic_from_cocycle(z);
        QPointResult r = has_point_over_Q(C);
        REQUIRE(r.solvable());
        Mobius A = trivializer_from_point(M, *r.point, z);
        for (unsigned long d : G.elements)
            REQUIRE(projectively_equal(z.at(d), A.inverse() * apply_aut(GaloisAut{d}, A)));
    }
    SECTION("trivial cocycle with the standard point on Q0") {
        CycloField q = CycloField::get(1);
        GalGroup G = galois_group(q, rational_subfield(q));
        Cocycle z = Cocycle::trivial(G);
        std::vector<CycloElem> pt = {CycloElem::one(q), CycloElem::zero(q), CycloElem::zero(q)};
        Mobius A = trivializer_from_point(SqMat::identity(q, 3), ConicPoint{pt}, z);
        (void)A; // postcondition is vacuous for the trivial group; reaching here is the test
    }
}
