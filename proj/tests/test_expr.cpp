#include <random>

#include "doctest.h"
#include "prodring/expr.hpp"

using namespace prodring;

namespace {

const char* kDepth2 = "Prod(k,1,n, (24*k+1)/(-sqrt(3)) * Prod(j,3,k, (-2*(j^3-3*j+2))/(5*(j^2-j-2))))";

RatFun lin(long a, long b = 1) { return RatFun(Poly(std::vector<CycNum>{CycNum(a), CycNum(b)})); }

NestedProd random_prod(std::mt19937_64& g, int max_depth) {
    std::uniform_int_distribution<int> dd(1, max_depth), ab(1, 4), lo(0, 2), cc(0, 3);
    NestedProd p;
    const int d = dd(g);
    const CycNum cs[] = {CycNum(1), CycNum(-1), CycNum(2), CycNum(BigRat(1, 3))};
    for (int i = 0; i < d; ++i) {
        p.lowers.push_back(lo(g));
        RatFun f = RatFun(cs[cc(g)]) * lin(ab(g)) / lin(ab(g));
        p.mults.push_back(i + 1 < d && cc(g) == 0 ? RatFun(1) : f);
    }
    return p;
}

SExpr random_expr(std::mt19937_64& g) {
    std::uniform_int_distribution<int> nt(1, 3), nm(0, 2), ex(-2, 2), cf(-3, 3);
    SExpr s;
    const int t = nt(g);
    for (int i = 0; i < t; ++i) {
        SExpr term(RatFun(Poly(std::vector<CycNum>{CycNum(cf(g)), CycNum(cf(g))})) + RatFun(1));
        const int m = nm(g);
        for (int j = 0; j < m; ++j) term = term * SExpr::product(random_prod(g, 3), ex(g));
        s = s + term;
    }
    return s;
}

}  // namespace

TEST_CASE("parse depth-2 example") {
    ProdExprAst a = parse(kDepth2);
    REQUIRE(a.terms.size() == 1);
    CHECK(a.field == 12);
    CHECK(a.threshold == 0);
    const auto& mono = a.terms[0].mono;
    REQUIRE(mono.size() == 1);
    const NestedProd& p = mono[0].first;
    CHECK(mono[0].second == 1);
    CHECK(p.depth() == 2);
    CHECK(p.lowers == std::vector<long>{1, 3});
    CHECK(p.mults[0] == lin(1, 24) / RatFun(-sqrt_embed(3)));
    Poly num = Poly(-2) * (Poly::x().pow(3) - Poly(3) * Poly::x() + Poly(2));
    Poly den = Poly(5) * (Poly::x().pow(2) - Poly::x() - Poly(2));
    CHECK(p.mults[1] == RatFun(num, den));
}

TEST_CASE("depth-2 example values") {
    ProdExprAst a = parse(kDepth2);
    CHECK(oracle_eval(a, 0) == CycNum(1));
    CycNum v3 = oracle_eval(a, 3);
    CHECK(v3 == CycNum(BigRat(178850, 9)) * sqrt_embed(3));
    CHECK(v3 * v3 == CycNum(BigRat(BigInt(178850) * 178850, 27)));
}

TEST_CASE("trivial products") {
    ProdExprAst a = parse("Prod(k,1,n, 1)");
    REQUIRE(a.terms.size() == 1);
    REQUIRE(a.terms[0].mono.size() == 1);
    CHECK(a.terms[0].mono[0].first.depth() == 1);
    CHECK(a.terms[0].mono[0].first.mults[0].is_one());
    CHECK(oracle_eval(a, 5) == CycNum(1));

    ProdExprAst b = parse("Prod(k,1,n, Prod(j,1,k, -1))");
    CHECK(oracle_eval(b, 4) == CycNum(1));
    CHECK(oracle_eval(b, 2) == CycNum(-1));
}

TEST_CASE("invalid lower bound") {
    try {
        parse("Prod(j,1,n, (j-2))");
        FAIL("expected InvalidLowerBound");
    } catch (const InvalidLowerBound& e) {
        CHECK(e.offending == 2);
    }
    try {
        parse("Prod(j,0,n, 1/(j^2-9))");
        FAIL("expected InvalidLowerBound");
    } catch (const InvalidLowerBound& e) {
        CHECK(e.offending == 3);
    }
    CHECK_THROWS_AS(parse("Prod(j,1,n, 0)"), InvalidLowerBound);
    CHECK_NOTHROW(parse("Prod(j,3,n, (j-2))"));
}

TEST_CASE("syntax errors carry positions") {
    try {
        parse("Prod(k,1,n, k) + ");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.position == 17);
    }
    CHECK_THROWS_AS(parse("Prod(k,1,n, n)"), SyntaxError);
    CHECK_THROWS_AS(parse("Prod(k,1,m, k)"), SyntaxError);
    CHECK_THROWS_AS(parse("Prod(k,1,n, k + Prod(j,1,k,j))"), SyntaxError);
    CHECK_THROWS_AS(parse("2 $ 3"), SyntaxError);
    CHECK_THROWS_AS(parse("Prod(k,1,n, k"), SyntaxError);
    CHECK_THROWS_AS(parse("1/(Prod(k,1,n,k) - Prod(k,1,n,k+1))"), SyntaxError);
}

TEST_CASE("printing") {
    CHECK(print(ProdExprAst{}) == "0");
    ProdExprAst a = parse("Prod(k,1,n, k+1)^(-1) * n");
    CHECK(print(a) == "n*Prod(k,1,n,k + 1)^(-1)");
    ProdExprAst b = parse(kDepth2);
    ProdExprAst c = parse(print(b));
    CHECK(print(c) == print(b));
    CHECK(SExpr::from_ast(c).terms() == SExpr::from_ast(b).terms());
    CHECK(print(parse("Prod(k,1,n,2) - Prod(k,1,n,3)")) == "Prod(k,1,n,2) - Prod(k,1,n,3)");
    CHECK(print(parse("(n+1)*Prod(k,1,n,2)")) == "(n + 1)*Prod(k,1,n,2)");
}

TEST_CASE("json") {
    auto j = to_json(parse("2*Prod(k,1,n,k)^2 + Prod(k,1,n,k)*Prod(k,1,n,Prod(i,1,k,i+1))"));
    CHECK(j["products"].size() == 2);
    CHECK(j["expression"].size() == 2);
    CHECK(j["products"][1]["depth"] == 2);
}

TEST_CASE("upper offsets match the literal input") {
    const char* inputs[] = {
        "Prod(k,1,n-1, 1/36 * Prod(i,1,k-1,(i+1)*(i+2)/(4*(2*i+3)^2))) * 1/2",
        "Prod(k,0,n+2, (k+1)*Prod(i,2,k-1, i))",
        "Prod(k,3,n-2, k*Prod(i,1,k+1, (i+3)/(i+1)))",
        "Prod(k,1,n, (k+1)*Prod(j,0,k-3, j+2)) + n*Prod(k,2,n+1,k)",
    };
    for (const char* s : inputs) {
        ParsedInput in = parse_input(s);
        RawEvaluator ev(in.raw);
        auto vals = oracle_eval_range(in.ast, 0, 25);
        for (long n = in.ast.threshold; n <= 25; ++n) CHECK_MESSAGE(vals[n] == ev.eval(n), s << " n=" << n);
    }
    ProdExprAst rate = parse(inputs[0]);
    CHECK(rate.threshold == 1);
}

TEST_CASE("inner lower bound above the outer one") {
    ParsedInput in = parse_input("Prod(k,1,n, Prod(j,4,k,j))");
    RawEvaluator ev(in.raw);
    CHECK(in.ast.threshold == 0);
    for (long n = 0; n <= 15; ++n) CHECK(oracle_eval(in.ast, n) == ev.eval(n));
}

TEST_CASE("offset rewrite with a literal zero below the threshold") {
    try {
        parse("Prod(k,0,n, (k-1)*Prod(i,3,k-1, i))");
        FAIL("expected InvalidLowerBound");
    } catch (const InvalidLowerBound& e) {
        CHECK(e.offending == 1);
    }
}

TEST_CASE("printed random expressions re-parse and evaluate identically") {
    std::mt19937_64 g(77);
    for (int it = 0; it < 60; ++it) {
        SExpr s = random_expr(g);
        ProdExprAst a = s.to_ast(1, 0);
        const std::string text = print(a);
        ParsedInput in = parse_input(text);
        CHECK_MESSAGE(SExpr::from_ast(in.ast).terms() == s.terms(), text);
        RawEvaluator ev(in.raw);
        auto vals = oracle_eval_range(a, 0, 8);
        for (long n = 0; n <= 8; ++n) CHECK_MESSAGE(vals[n] == ev.eval(n), text << " n=" << n);
    }
}

TEST_CASE("oracle is additive and multiplicative") {
    std::mt19937_64 g(4242);
    for (int it = 0; it < 40; ++it) {
        SExpr a = random_expr(g), b = random_expr(g);
        auto va = oracle_eval_range(a.to_ast(1, 0), 0, 20);
        auto vb = oracle_eval_range(b.to_ast(1, 0), 0, 20);
        auto vs = oracle_eval_range((a + b).to_ast(1, 0), 0, 20);
        auto vp = oracle_eval_range((a * b).to_ast(1, 0), 0, 20);
        for (long n = 0; n <= 20; ++n) {
            CHECK(vs[n] == va[n] + vb[n]);
            CHECK(vp[n] == va[n] * vb[n]);
        }
    }
}

TEST_CASE("defining recurrence of nested products") {
    std::mt19937_64 g(99);
    for (int it = 0; it < 50; ++it) {
        NestedProd p = random_prod(g, 3);
        auto t = eval_prod_table(p, 20);
        std::vector<CycNum> in(21, CycNum(1));
        if (p.depth() > 1) in = eval_prod_table(p.inner(), 20);
        for (long n = 1; n <= 20; ++n) {
            CycNum step = n >= p.lowers[0] ? p.mults[0].eval_at(n) * in[n] : CycNum(1);
            CHECK(t[n] == t[n - 1] * step);
        }
        CHECK(t[0] == (p.lowers[0] == 0 ? p.mults[0].eval_at(0) * in[0] : CycNum(1)));
    }
}

TEST_CASE("valid products never vanish") {
    std::mt19937_64 g(31337);
    for (int it = 0; it < 25; ++it) {
        NestedProd p = random_prod(g, 2);
        auto t = eval_prod_table(p, 200);
        for (long n = 0; n <= 200; ++n) REQUIRE(!t[n].is_zero());
    }
}

TEST_CASE("field of constants") {
    CHECK(parse("zeta(3)*Prod(k,1,n,sqrt(2))").field == 24);
    CHECK(parse("sqrt(4)*Prod(k,1,n,k)").field == 1);
    CHECK(parse("zeta(6)").field == 3);
}
