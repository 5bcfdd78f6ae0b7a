#include <map>
#include <random>

#include "doctest.h"
#include "prodring/poly.hpp"

using namespace prodring;

namespace {

Poly X() { return Poly::x(); }
Poly c(long v) { return Poly(v); }
Poly q(long a, long b) { return Poly(CycNum(BigRat(a, b))); }

RatFun expand(const Factorization& f) {
    RatFun r(f.content);
    for (const auto& [p, e] : f.factors) r *= RatFun(p).pow(e);
    return r;
}

// Brute-force oracle: all integer k in [-lim, lim] with gcd(f(x), h(x+k)) nontrivial.
std::vector<long> brute_shifts(const Poly& f, const Poly& h, long lim) {
    std::vector<long> out;
    for (long k = -lim; k <= lim; ++k)
        if (gcd(f, h.shift(k)).degree() >= 1) out.push_back(k);
    return out;
}

}  // namespace

TEST_CASE("factorize examples") {
    CycNum s3 = sqrt_embed(3);
    RatFun f(Poly(24) * X() + c(1), Poly(-s3));
    Factorization fa = factorize(f);
    CHECK(fa.content == CycNum(-8) * s3);
    REQUIRE(fa.factors.size() == 1);
    CHECK(fa.factors[0].first == X() + q(1, 24));
    CHECK(fa.factors[0].second == 1);

    Poly num = c(-2) * (X().pow(3) - c(3) * X() + c(2));
    Poly den = c(5) * (X().pow(2) - X() - c(2));
    Factorization fb = factorize(RatFun(num, den));
    CHECK(fb.content == CycNum(BigRat(-2, 5)));
    std::map<Poly, int> want{{X() - c(1), 2}, {X() + c(2), 1}, {X() - c(2), -1}, {X() + c(1), -1}};
    std::map<Poly, int> got(fb.factors.begin(), fb.factors.end());
    CHECK(got == want);

    Factorization fc = factorize(RatFun(c(7)));
    CHECK(fc.content == CycNum(7));
    CHECK(fc.factors.empty());
    CHECK_THROWS_AS(factorize(RatFun()), ZeroPolynomial);
}

TEST_CASE("factorization over cyclotomic fields") {
    Factorization f = factor_poly(X().pow(2) + c(1), 4);
    CHECK(f.factors.size() == 2);
    Factorization g = factor_poly(X().pow(2) + c(1), 1);
    CHECK(g.factors.size() == 1);
    Factorization h = factor_poly(X().pow(2) - c(3), 12);
    CHECK(h.factors.size() == 2);
    Factorization k = factor_poly(X().pow(4) + c(1), 8);
    CHECK(k.factors.size() == 4);
    Factorization l = factor_poly(X().pow(4) + c(1), 4);
    CHECK(l.factors.size() == 2);
    Factorization m = factor_poly(X().pow(6) - c(1), 1);
    CHECK(m.factors.size() == 4);
    CHECK(expand(m) == RatFun(X().pow(6) - c(1)));
}

TEST_CASE("Zassenhaus on products with many modular factors") {
    // x^8 - 16 type polynomials split into many factors modulo most primes.
    Poly f = (X().pow(4) - c(10) * X().pow(2) + c(1)) * (X().pow(2) - c(2)) * (X() + c(3));
    Factorization fa = factor_poly(f);
    CHECK(fa.factors.size() == 3);
    CHECK(expand(fa) == RatFun(f));
    Poly sw = X().pow(4) + c(1);
    CHECK(factor_poly(sw).factors.size() == 1);
}

TEST_CASE("factorization round-trip on random products") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> d(-6, 6);
    std::vector<unsigned> fields{1, 3, 4, 12};
    for (int it = 0; it < 40; ++it) {
        unsigned n = fields[static_cast<std::size_t>(it) % fields.size()];
        CycNum z = CycNum::zeta(n);
        Poly f(CycNum(static_cast<long>(1 + it % 3)));
        int nf = 1 + it % 4;
        for (int j = 0; j < nf; ++j) {
            int deg = 1 + (j + it) % 2;
            std::vector<CycNum> cs;
            for (int t = 0; t < deg; ++t) cs.push_back(CycNum(static_cast<long>(d(rng))) + (n > 1 ? z * CycNum(static_cast<long>(d(rng) % 2)) : CycNum(0)));
            cs.push_back(CycNum(1));
            Poly g(cs);
            f *= g.pow(1 + static_cast<unsigned>(j % 2));
        }
        Factorization fa = factor_poly(f, n);
        CHECK(expand(fa) == RatFun(f));
        for (const auto& [p, e] : fa.factors) {
            CHECK(p.lc() == CycNum(1));
            CHECK(factor_poly(p, n).factors.size() == 1);
        }
    }
}

TEST_CASE("resultant_shift and integer_roots") {
    Poly p1 = resultant_shift(X() - c(2), X() - c(1));
    CHECK(integer_roots(p1) == std::vector<long>{-1});
    CHECK(brute_shifts(X() - c(2), X() - c(1), 10) == std::vector<long>{-1});
    Poly p2 = resultant_shift(X() - c(2), X() + c(2));
    CHECK(integer_roots(p2) == std::vector<long>{-4});
    CHECK(brute_shifts(X() - c(2), X() + c(2), 10) == std::vector<long>{-4});
    Poly p3 = resultant_shift(X() - c(2), X() + q(1, 24));
    CHECK(integer_roots(p3).empty());
    CHECK(brute_shifts(X() - c(2), X() + q(1, 24), 10).empty());

    CHECK(integer_roots(X() * (X() + c(4)) * (X() - c(3))) == std::vector<long>{-4, 0, 3});
    CHECK(integer_roots(X().pow(2) + c(1)).empty());
    CHECK_THROWS_AS(integer_roots(Poly()), ZeroPolynomial);
}

TEST_CASE("resultant_shift matches brute force on random pairs") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int it = 0; it < 30; ++it) {
        auto rnd = [&](int deg) {
            std::vector<CycNum> cs;
            for (int t = 0; t < deg; ++t) cs.push_back(CycNum(static_cast<long>(d(rng))));
            cs.push_back(CycNum(1));
            return Poly(cs);
        };
        Poly f = rnd(1 + it % 2) * rnd(1);
        Poly h = rnd(1 + (it / 2) % 2);
        std::vector<long> roots = integer_roots(resultant_shift(f, h));
        std::vector<long> in_range;
        for (long k : roots)
            if (k >= -10 && k <= 10) in_range.push_back(k);
        CHECK(in_range == brute_shifts(f, h, 10));
    }
}

TEST_CASE("z_function") {
    CHECK(z_function((X() - c(2)) * (X() - c(5))) == 6);
    CHECK(z_function(X() + c(3)) == 0);
    CHECK(z_function(X().pow(2) - X() - c(2)) == 3);
    CHECK_THROWS_AS(z_function(Poly()), ZeroPolynomial);
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-30, 30);
    for (int it = 0; it < 20; ++it) {
        Poly p = X().pow(2) + c(d(rng)) * X() + c(d(rng));
        long z = z_function(p);
        for (long n = z; n <= z + 1000 && n <= 1000; ++n) CHECK_FALSE(p.eval(CycNum(n)).is_zero());
    }
}

TEST_CASE("shift and eval_at") {
    CHECK((X() - c(2)).shift(1) == X() - c(1));
    RatFun r(c(1), X() - c(3));
    CHECK(r.eval_at(3) == CycNum(0));
    CHECK(RatFun((X() + c(1)) * CycNum(BigRat(1, 2))).eval_at(5) == CycNum(3));
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int it = 0; it < 30; ++it) {
        RatFun f(X().pow(2) + c(d(rng)) * X() + c(d(rng)), X() + c(d(rng)));
        long a = d(rng), b = d(rng);
        CHECK(f.shift(a).shift(b) == f.shift(a + b));
        for (long n = 0; n < 10; ++n) {
            if (f.den().eval(CycNum(n + a)).is_zero()) continue;
            CHECK(f.shift(a).eval_at(n) == f.eval_at(n + a));
        }
    }
}

TEST_CASE("shift_distance") {
    CHECK(shift_distance(X() - c(2), X() + c(2)) == 4);
    CHECK_FALSE(shift_distance(X() - c(2), X() + q(1, 24)).has_value());
    Poly f = X().pow(2) + c(1);
    CHECK(shift_distance(f, f.shift(-3)) == -3);
}

TEST_CASE("printing") {
    CHECK((X().pow(2) - X() - c(2)).str("n") == "n^2 - n - 2");
    CHECK(RatFun(c(9), c(2) * X() + c(3)).str("n") == "9/(2*n + 3)");
    CHECK(RatFun(X() + q(3, 2)).str("k") == "k + 3/2");
    CHECK(RatFun(X(), X() + q(1, 2)).str("n") == "(2*n)/(2*n + 1)");
}
