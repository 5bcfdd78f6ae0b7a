#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "prodring/preprocess.hpp"
#include "prodring/tower.hpp"

namespace prodring {

struct HyperChain {
    Poly base;
    std::size_t length = 1;
};

// Exponents of the chain generators, keyed by (chain, depth).
using HyperMonomial = std::map<std::pair<std::size_t, std::size_t>, long>;

struct HyperTowerPlan {
    std::vector<HyperChain> chains;  // canonical base order
    long delta = 0;
    std::vector<HyperMonomial> images;  // one per input split
};

// One chain per distinct hypergeometric base; throws ShiftCoprimalityViolated.
HyperTowerPlan plan_hyper(const std::vector<ProductSplit>& splits);
void check_shift_coprime(const std::vector<Poly>& bases);

struct HyperGenerators {
    std::vector<std::vector<std::size_t>> chains;  // [chain][depth-1]
};

HyperGenerators hyper_generators(const HyperTowerPlan& plan);
// Adds the generators of one depth level, named prefix{chain}_{depth}.
void add_hyper_level(Tower& t, const HyperTowerPlan& plan, std::size_t depth, HyperGenerators& gens,
                     const std::string& prefix = "z");
// All levels of the plan, in depth order.
HyperGenerators build_hyper_tower(Tower& t, const HyperTowerPlan& plan);
TowerElem hyper_image_elem(const Tower& t, const HyperMonomial& m, const HyperGenerators& gens);

}  // namespace prodring
