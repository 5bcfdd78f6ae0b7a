#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "prodring/poly.hpp"

namespace prodring {

// prod_{k1=l1}^{n} f1(k1) prod_{k2=l2}^{k1} f2(k2) ... ; outermost first.
struct NestedProd {
    std::vector<long> lowers;
    std::vector<RatFun> mults;

    std::size_t depth() const { return lowers.size(); }
    // Depth-1-shorter product formed by the inner levels.
    NestedProd inner() const;
    bool factored() const;
    friend bool operator<(const NestedProd& a, const NestedProd& b) {
        if (a.lowers != b.lowers) return a.lowers < b.lowers;
        return a.mults < b.mults;
    }
    friend bool operator==(const NestedProd& a, const NestedProd& b) {
        return a.lowers == b.lowers && a.mults == b.mults;
    }
};

// Values of p at upper bounds 0..upto by literal iterated multiplication.
std::vector<CycNum> eval_prod_table(const NestedProd& p, long upto);
CycNum eval_prod(const NestedProd& p, long n);

using Monomial = std::map<NestedProd, int>;

struct Term {
    RatFun coeff;
    std::vector<std::pair<NestedProd, int>> mono;
};

struct ProdExprAst {
    std::vector<Term> terms;
    unsigned field = 1;
    // Identity with the literal input holds for n >= threshold.
    long threshold = 0;
};

// Sparse sum of coefficient * monomial, the working form for building and combining ASTs.
class SExpr {
public:
    SExpr() = default;
    SExpr(const RatFun& c) { if (!c.is_zero()) t_[Monomial{}] = c; }
    static SExpr product(const NestedProd& p, int e = 1);

    const std::map<Monomial, RatFun>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool single() const { return t_.size() == 1; }
    bool has_products() const;

    friend SExpr operator+(const SExpr& a, const SExpr& b);
    friend SExpr operator-(const SExpr& a, const SExpr& b);
    friend SExpr operator*(const SExpr& a, const SExpr& b);
    SExpr operator-() const;
    // Only for single-term expressions.
    SExpr pow(long e) const;

    ProdExprAst to_ast(unsigned field, long threshold) const;
    static SExpr from_ast(const ProdExprAst& a);

private:
    std::map<Monomial, RatFun> t_;
};

struct RawNode;
using RawPtr = std::shared_ptr<const RawNode>;

struct RawNode {
    enum Kind { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Prod } kind;
    std::size_t pos = 0;
    CycNum value;
    std::string name;  // Var name or Prod variable
    long lower = 0;    // Prod
    std::string upper_var;
    long upper_offset = 0;
    long exponent = 0;  // Pow
    std::vector<RawPtr> kids;
};

struct ParsedInput {
    ProdExprAst ast;
    RawPtr raw;
    std::string text;
};

ParsedInput parse_input(const std::string& text);
ProdExprAst parse(const std::string& text);

// Literal evaluator of the parsed input tree, memoized per product node; one instance per thread.
class RawEvaluator {
public:
    explicit RawEvaluator(RawPtr root) : root_(std::move(root)) {}
    CycNum eval(long n);
    CycNum eval_node(const RawNode* node, long var_value);

private:
    CycNum prod_value(const RawNode* node, long upper);
    RawPtr root_;
    std::map<const RawNode*, std::vector<CycNum>> prefix_;
};

CycNum oracle_eval(const ProdExprAst& a, long n);
std::vector<CycNum> oracle_eval_range(const ProdExprAst& a, long from, long to);

std::string print_prod(const NestedProd& p, const std::string& upper = "n");
std::string print(const ProdExprAst& a);
nlohmann::json to_json(const ProdExprAst& a);

std::string product_var_name(std::size_t depth_index);

}  // namespace prodring
