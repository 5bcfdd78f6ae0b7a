#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "prodring/georing.hpp"
#include "prodring/hyperring.hpp"

namespace prodring {

struct MergedGenerators {
    GeoGenerators geo;
    HyperGenerators hyp;
};

// theta first, then per depth the geometric chains followed by the hypergeometric chains.
MergedGenerators merge_towers(Tower& t, const GeoImage& geo, const HyperTowerPlan& hyp);

struct OutputProduct {
    std::string id;
    NestedProd prod;
    std::size_t gen = 0;
    bool geometric = false;
};

struct RpeResult {
    long delta = 0;
    unsigned field = 1;
    unsigned zeta_order = 0;  // 0 when theta does not occur in the output
    std::optional<std::size_t> theta;
    std::vector<OutputProduct> products;  // occurring in the output, tower order, theta excluded
    std::shared_ptr<Tower> tower;
    TowerElem element;
    ProdExprAst output;
    std::vector<NestedProd> inputs;
    std::vector<TowerElem> images;  // one per input product
    std::vector<ProductSplit> splits;
    GeoImage geo;
    HyperTowerPlan hyp;
};

RpeResult reduce(const ProdExprAst& a, const GoConfig& cfg = {});

struct ZeroTest {
    bool zero = false;
    long delta = 0;
};
ZeroTest zero_test(const ProdExprAst& a, const GoConfig& cfg = {});

// theta as the product prod_{k=1}^n zeta.
NestedProd theta_product(unsigned zeta_order);

// First n in [delta, delta+count] where the reference disagrees with the output.
std::optional<long> oracle_mismatch(const std::function<CycNum(long)>& reference, const RpeResult& r, long count);
std::optional<long> oracle_mismatch(const ProdExprAst& input, const RpeResult& r, long count);

// The two structural conditions behind the independence of the output products.
struct StructuralCheck {
    bool hyper_shift_coprime = false;
    bool geo_relation_free = false;
};
StructuralCheck structural_check(const RpeResult& r, const GoConfig& cfg = {});

struct IndependenceReport {
    bool independent = true;
    std::vector<long> relation;  // nonzero exponents over the products when dependent
    std::string route;
    std::string message;
};

// Searches for prod Q_i^e_i = c * w^n with w a root of unity, by lattice reduction and by brute force.
IndependenceReport independence_report(const std::vector<NestedProd>& prods, long n_max, long exp_bound);
IndependenceReport independence_report(const RpeResult& r, long n_max, long exp_bound);

nlohmann::json to_json(const RpeResult& r);
// Rebuilds the output expression from its json form.
ProdExprAst from_json(const nlohmann::json& j);

}  // namespace prodring
