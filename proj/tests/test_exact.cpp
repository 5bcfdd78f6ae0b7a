#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "prodring/exact.hpp"
#include "prodring/linalg.hpp"

using namespace prodring;

namespace {

CycNum z(unsigned n, long k = 1) { return CycNum::zeta_pow(n, k); }

std::complex<double> approx(const CycNum& a) {
    auto c = a.embed(64);
    return {c.re.to_double(), c.im.to_double()};
}

CycNum random_elem(std::mt19937& rng, unsigned n) {
    std::uniform_int_distribution<int> d(-5, 5);
    CycNum r(0);
    for (unsigned j = 0; j < n; ++j) r += CycNum(BigRat(d(rng), 1 + (j % 3))) * z(n, j);
    return r;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_poly(1) == std::vector<BigInt>{-1, 1});
    CHECK(cyclotomic_poly(4) == std::vector<BigInt>{1, 0, 1});
    CHECK(cyclotomic_poly(12) == std::vector<BigInt>{1, 0, -1, 0, 1});
    CHECK(cyclotomic_poly(105).size() == 49);
}

TEST_CASE("field operations") {
    CHECK(z(4) * z(4) == CycNum(-1));
    CycNum s = z(12) + z(12, 11);
    CHECK(s * s == CycNum(3));
    CHECK(CycNum(24).inverse() == CycNum(BigRat(1, 24)));
    CHECK_THROWS_AS(CycNum(0).inverse(), DivisionByZero);
    CHECK(z(2) == CycNum(-1));
    CHECK(z(6) == -z(3, 2));
    CHECK(z(6).conductor() == 3);
}

TEST_CASE("lift_to") {
    CycNum m1 = CycNum(-1).lift_to(4);
    CHECK(m1 == z(4, 2));
    CHECK(z(4).lift_to(12) == z(12, 3));
    CycNum five = CycNum(5).lift_to(12);
    CHECK(five.conductor() == 12);
    CHECK(five.coeffs() == std::vector<BigRat>{5, 0, 0, 0});
    CHECK(five.lowered() == CycNum(5));
    CHECK_THROWS_AS(z(4).lift_to(6), NotASubfield);
    CycNum i12 = z(4).lift_to(12);
    CHECK(i12.lowered().conductor() == 4);
}

TEST_CASE("order_of") {
    CHECK(order_of(CycNum(-1)) == 2);
    CHECK(order_of(z(12) + z(12, 11)) == 0);
    CHECK(order_of(z(4)) == 4);
    CHECK(order_of(z(3)) == 3);
    CHECK(order_of(-z(3)) == 6);
    CHECK(order_of(CycNum(1)) == 1);
    CHECK(order_of(CycNum(2)) == 0);
    CHECK_THROWS_AS(order_of(CycNum(0)), ZeroElement);
}

TEST_CASE("embed") {
    auto c = z(4).embed(53);
    CHECK(std::abs(c.re.to_double()) < 1e-15);
    CHECK(std::abs(c.im.to_double() - 1.0) < 1e-15);
    CHECK(std::abs((z(12) + z(12, 11)).embed(53).re.to_double() - std::sqrt(3.0)) < 1e-10);
    CHECK(std::abs(CycNum(BigRat(1, 24)).embed(53).re.to_double() - 1.0 / 24) < 1e-15);
    CHECK((z(5)).conjugates(64).size() == 4);
}

TEST_CASE("sqrt_embed") {
    for (long d : {2L, 3L, 5L, 6L, 7L, 10L, 11L, 13L, 15L, 30L, 105L}) {
        CycNum s = sqrt_embed(d);
        CHECK(s * s == CycNum(d));
        CHECK(std::abs(approx(s).real() - std::sqrt(static_cast<double>(d))) < 1e-9);
    }
    CHECK(sqrt_embed(3) == z(12) + z(12, 11));
    CHECK(sqrt_embed(2) == z(8) + z(8, 7));
    CHECK_THROWS_AS(sqrt_embed(1), NotSquarefree);
    CHECK_THROWS_AS(sqrt_embed(12), NotSquarefree);
}

TEST_CASE("printing") {
    CHECK(CycNum(BigRat(-3, 2)).str() == "-3/2");
    CHECK(z(4).str() == "zeta(4)");
    CHECK(sqrt_embed(3).str() == "sqrt(3)");
    CHECK((CycNum(1) + z(4) * sqrt_embed(3)).str() == "1 + zeta(4)*sqrt(3)");
    CHECK(z(3).str() == "zeta(3)");
    CHECK(z(4).lift_to(12).str() == "zeta(4)");
}

TEST_CASE("field axioms on random elements") {
    std::mt19937 rng(12345);
    for (unsigned n : {3u, 4u, 5u, 8u, 12u, 15u}) {
        for (int it = 0; it < 20; ++it) {
            CycNum a = random_elem(rng, n), b = random_elem(rng, n), c = random_elem(rng, n);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) CHECK(a * a.inverse() == CycNum(1));
            unsigned m = n * 2 == 6 ? 12 : n * 3;
            CHECK((a * b).lift_to(m) == a.lift_to(m) * b.lift_to(m));
            CHECK((a + b).lift_to(m) == a.lift_to(m) + b.lift_to(m));
            auto ea = approx(a), eb = approx(b), eab = approx(a * b);
            CHECK(std::abs(eab - ea * eb) < 1e-9 * (1 + std::abs(ea) * std::abs(eb)));
        }
    }
}

TEST_CASE("order_of is minimal over divisors") {
    for (unsigned n : {3u, 4u, 5u, 8u, 12u}) {
        for (long k = 0; k < static_cast<long>(n); ++k) {
            for (int sgn : {1, -1}) {
                CycNum a = z(n, k) * CycNum(sgn);
                unsigned t = order_of(a);
                REQUIRE(t > 0);
                CHECK(a.pow(t).is_one());
                for (unsigned s = 1; s < t; ++s) CHECK_FALSE(a.pow(s).is_one());
            }
        }
    }
}

TEST_CASE("galois conjugation is a field automorphism") {
    std::mt19937 rng(7);
    for (int it = 0; it < 20; ++it) {
        CycNum a = random_elem(rng, 12), b = random_elem(rng, 12);
        for (unsigned k : {1u, 5u, 7u, 11u}) {
            CHECK((a * b).galois(k) == a.galois(k) * b.galois(k));
            CHECK((a + b).galois(k) == a.galois(k) + b.galois(k));
        }
    }
    CHECK(sqrt_embed(3).galois(5) == -sqrt_embed(3));
}

TEST_CASE("integer linear algebra") {
    ZMatrix a = {{2}, {-4}, {6}};
    ZMatrix ker = integer_left_kernel(a);
    CHECK(ker.size() == 2);
    for (auto& v : ker) CHECK(2 * v[0] - 4 * v[1] + 6 * v[2] == 0);
    ZMatrix b = {{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}};
    b[0][3] = 100;
    auto r = lll_reduce(b);
    CHECK(r.size() == 3);
}
