#include <random>

#include "doctest.h"
#include "prodring/tower.hpp"

using namespace prodring;

namespace {

Poly lin(const BigRat& a) { return Poly::linear(CycNum(a)); }

// The multiple chain tower of the running example.
struct ExampleTower {
    Tower t{12};
    std::vector<std::size_t> th, y1, y2, y3, y4, y5, z1, z2;
    ExampleTower() {
        th = t.add_chain(Generator::A, RatFun(-1), 2, 1, 2, "th");
        y1 = t.add_chain(Generator::P, RatFun(sqrt_embed(3)), 1, 1, 0, "ya");
        y2 = t.add_chain(Generator::P, RatFun(2), 2, 1, 0, "yb");
        y3 = t.add_chain(Generator::P, RatFun(3), 1, 1, 0, "yc");
        y4 = t.add_chain(Generator::P, RatFun(5), 2, 1, 0, "yd");
        y5 = t.add_chain(Generator::P, RatFun(25), 1, 1, 0, "ye");
        z1 = t.add_chain(Generator::P, RatFun(lin(-1)), 2, 3, 0, "za");
        z2 = t.add_chain(Generator::P, RatFun(lin(BigRat(25, 24))), 1, 3, 0, "zb");
    }
};

TowerElem random_elem(const Tower& t, std::mt19937_64& g) {
    std::uniform_int_distribution<int> nt(1, 3), ex(-2, 2), cf(-3, 3), pick(0, 2);
    TowerElem e = t.constant(RatFun(0));
    for (int i = nt(g); i > 0; --i) {
        Exps v(t.size());
        for (auto& x : v) x = pick(g) == 0 ? ex(g) : 0;
        Poly c(std::vector<CycNum>{CycNum(cf(g)), CycNum(cf(g))});
        if (c.is_zero()) c = Poly(1);
        e = e + TowerElem(&t, RatFun(c), v);
    }
    return e;
}

}  // namespace

TEST_CASE("sigma on simple elements") {
    Tower t;
    auto g = t.add_P(t.constant(RatFun(2)));
    TowerElem e = t.x() * t.gen_elem(g);
    CHECK(e.sigma() == t.constant(RatFun(Poly::linear(CycNum(1))) * RatFun(2)) * t.gen_elem(g));
    CHECK(e.sigma().sigma(-1) == e);
}

TEST_CASE("chain relations") {
    Tower t;
    auto ch = t.add_chain(Generator::P, RatFun(7), 3, 1);
    TowerElem t1 = t.gen_elem(ch[0]), t2 = t.gen_elem(ch[1]), t3 = t.gen_elem(ch[2]);
    CHECK(t2.sigma() / t2 == t.constant(RatFun(7)) * t1);
    CHECK(t2 / t2.sigma(-1) == t1);
    CHECK(t3 / t3.sigma(-1) == t2);
    CHECK(t.gen(ch[0]).depth == 1);
    CHECK(t.gen(ch[1]).depth == 2);
    CHECK(t.gen(ch[2]).depth == 3);
    CHECK(t.is_ordered());
    CHECK(t.is_basic());
}

TEST_CASE("evaluation of generators") {
    Tower t;
    auto th = t.add_chain(Generator::A, RatFun(-1), 2, 1, 2);
    auto z = t.add_P(t.constant(RatFun(lin(-1))), 3);
    for (long n = 0; n <= 50; ++n) {
        CHECK(t.gen_value(th[0], n) == CycNum(n % 2 ? -1 : 1));
        const long tri = n * (n + 1) / 2;
        CHECK(t.gen_value(th[1], n) == CycNum(tri % 2 ? -1 : 1));
    }
    CycNum f(1);
    for (long n = 3; n <= 20; ++n) {
        f *= CycNum(n - 2);
        CHECK(t.gen_value(z, n) == f);
    }
    CHECK(t.gen_value(z, 2) == CycNum(1));
}

TEST_CASE("ring arithmetic") {
    Tower t;
    auto a = t.add_A(2, t.constant(RatFun(-1)));
    auto p = t.add_P(t.constant(RatFun(3)));
    TowerElem th = t.gen_elem(a), one = t.one();
    CHECK(th * th == one);
    CHECK(((th - one) * (th + one)).is_zero());
    CHECK((t.gen_elem(p, 3) * t.gen_elem(p, -3)).is_one());
    CHECK_THROWS_AS((th + one).inverse(), NonUnitDivisor);
    CHECK_THROWS_AS(t.add_A(2, t.constant(RatFun(CycNum::zeta(3)))), Error);
    CHECK_THROWS_AS(t.add_A(2, t.gen_elem(p)), Error);
}

TEST_CASE("running example tower") {
    ExampleTower ex;
    Tower& t = ex.t;
    CHECK_FALSE(t.is_ordered());
    CHECK_FALSE(t.is_basic());
    std::vector<std::size_t> depths;
    for (std::size_t i = 0; i < t.size(); ++i) depths.push_back(t.gen(i).depth);
    CHECK(depths == std::vector<std::size_t>{1, 2, 1, 1, 2, 1, 1, 2, 1, 1, 2, 1});
    for (long n = 0; n <= 10; ++n) {
        CHECK(t.gen_value(ex.th[0], n).pow(2).is_one());
        CHECK(t.gen_value(ex.th[1], n).pow(2).is_one());
    }
    CycNum h(1);
    for (long n = 3; n <= 12; ++n) {
        h *= CycNum(Poly::linear(CycNum(BigRat(1, 24))).eval(CycNum(n)));
        CHECK(t.gen_value(ex.z2[0], n) == h);
    }
}

TEST_CASE("evaluation laws hold on random elements") {
    ExampleTower ex;
    std::mt19937_64 g(555);
    for (int it = 0; it < 30; ++it) {
        TowerElem e = random_elem(ex.t, g), f = random_elem(ex.t, g);
        auto fail = ev_hom_check(e, f, 3, 30);
        CHECK_MESSAGE(!fail, *fail);
    }
    CHECK(!ev_hom_check(ex.t.one(), ex.t.one(), 0, 10));
}

TEST_CASE("sigma is a ring automorphism") {
    ExampleTower ex;
    std::mt19937_64 g(8080);
    for (int it = 0; it < 30; ++it) {
        TowerElem a = random_elem(ex.t, g), b = random_elem(ex.t, g);
        CHECK((a * b).sigma() == a.sigma() * b.sigma());
        CHECK((a + b).sigma() == a.sigma() + b.sigma());
        CHECK(a.sigma(3).sigma(-3) == a);
        CHECK(a.sigma(-2).sigma(2) == a);
    }
}

TEST_CASE("corrupted evaluation is detected") {
    Tower t;
    auto p = t.add_P(t.constant(RatFun(2)), 1, CycNum(1), "bad", [](long n) { return CycNum(3).pow(n); });
    auto fail = ev_hom_check(t.gen_elem(p), t.one(), 1, 10);
    CHECK(fail.has_value());
}
