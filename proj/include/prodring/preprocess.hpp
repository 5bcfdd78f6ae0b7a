#pragma once

#include <utility>
#include <vector>

#include "prodring/expr.hpp"

namespace prodring {

using ProdPowers = std::vector<std::pair<NestedProd, long>>;

// Factored-form product of the given depth with every lower bound equal to `lower`.
NestedProd factored_prod(std::size_t depth, long lower, const RatFun& base);
NestedProd factored_prod(const std::vector<long>& lowers, const RatFun& base);
const RatFun& base_of(const NestedProd& p);
bool is_geometric(const NestedProd& p);

// u = prod atom^e with atoms among roots of unity, rational primes, square roots of primes.
std::vector<std::pair<CycNum, long>> split_constant(const CycNum& u);

// Products in factored form over constants (split into atoms) and monic irreducibles.
ProdPowers factored_form(const NestedProd& p, unsigned field = 1);

struct SyncResult {
    CycNum c{1};
    ProdPowers factors;
};

// Every factor rewritten with all lower bounds delta; exact for n >= max(0, delta-1).
SyncResult sync_lower_bounds(const ProdPowers& factors, long delta);
// A geometric product with uniform lower bounds rewritten over lower bound 1.
SyncResult geometric_to_one(const NestedProd& g, long e);
// Lower bounds to delta, then geometric factors to 1.
SyncResult synchronize(const ProdPowers& factors, long delta);

// Leftmost member of each shift-equivalence class among monic irreducible bases.
std::vector<Poly> leftmost_representatives(const std::vector<Poly>& bases);

struct Reduction {
    CycNum c{1};
    RatFun r{1};
    ProdPowers geo;
    ProdPowers hyp;
};

// Rewrites delta-refined hypergeometric factors over the leftmost representatives `reps`.
Reduction shift_coprime_reduce(const ProdPowers& hyp, long delta, const std::vector<Poly>& reps);
Reduction shift_coprime_reduce(const ProdPowers& hyp, long delta);

struct ProductSplit {
    CycNum c{1};
    RatFun r{1};
    ProdPowers geo;  // 1-refined, atom bases
    ProdPowers hyp;  // delta-refined, leftmost monic irreducible bases
    long delta = 0;
};

long max_lower(const NestedProd& p);
// delta < 0 means the product's own maximal lower bound.
ProductSplit split(const NestedProd& p, long delta = -1);
// Joint split with one delta and one set of class representatives.
std::vector<ProductSplit> split_all(const std::vector<NestedProd>& ps, long delta = -1);

CycNum eval_split(const ProductSplit& s, long n);
ProdPowers combine(const ProdPowers& f);

}  // namespace prodring
