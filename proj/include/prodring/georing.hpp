#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prodring/tower.hpp"

namespace prodring {

struct GoConfig {
    long max_exponent = 64;
    mpfr_prec_t precision = 128;
    mpfr_prec_t max_precision = 4096;
};

// Z-basis of {v : prod alpha_i^v_i is a root of unity}, each vector with its exact root of unity.
struct RelationLattice {
    std::vector<CycNum> elements;
    std::vector<std::vector<long>> basis;
    std::vector<CycNum> cofactors;

    std::size_t rank() const { return basis.size(); }
    // Basis of the sublattice with cofactor 1.
    std::vector<std::vector<long>> strict_basis() const;
};

RelationLattice solve_go(const std::vector<CycNum>& alphas, const GoConfig& cfg = {});

// Every base equals zeta^mu[i] * prod gens[k]^v[i][k]; the gens are independent modulo torsion.
struct Depth1Reduction {
    unsigned lambda = 1;  // order of zeta; 1 when no root of unity occurs
    CycNum zeta{1};
    std::vector<CycNum> gens;
    std::vector<long> mu;
    std::vector<std::vector<long>> v;
};

Depth1Reduction reduce_depth1(const std::vector<CycNum>& bases, const GoConfig& cfg = {});

// Smallest n > 0 with sigma^n(a) = a; throws PeriodCapExceeded beyond cap.
unsigned long period(const TowerElem& a, unsigned long cap);
// Period of an A-generator, capped at order^(depth+1).
unsigned long period(const Tower& t, std::size_t gen);

// Coefficients (ascending in theta) of e_0..e_{lambda-1} for sigma(theta) = zeta theta.
std::vector<std::vector<CycNum>> idempotent_coeffs(unsigned lambda, const CycNum& zeta);
// The idempotents as elements of t, where theta is an A-generator with constant quotient.
std::vector<TowerElem> idempotents(const Tower& t, std::size_t theta);

// Polynomial in theta (ascending coefficients, length lambda) of the collapse of each A-generator.
struct Collapse {
    unsigned lambda = 1;
    CycNum zeta{1};
    std::vector<unsigned long> periods;
    std::vector<std::vector<CycNum>> images;
};

// t must consist of A-generators only; m is the order of the root of unity in their quotients.
Collapse collapse_a_chains(const Tower& t, unsigned m);
// Coefficients of sum_i f(lambda-1-i) e_i for a sequence f of period lambda.
std::vector<CycNum> collapse_values(const std::vector<CycNum>& values, unsigned lambda, const CycNum& zeta);

// prod_{k1=1}^n prod_{k2=1}^{k1} ... base, with `depth` nested products.
struct GeoProduct {
    CycNum base;
    std::size_t depth = 1;
};

struct PiChain {
    CycNum base;
    std::size_t length = 1;
};

// gamma(theta) * prod over (chain, depth) of the chain generators.
struct GeoMonomial {
    std::vector<CycNum> gamma;
    std::map<std::pair<std::size_t, std::size_t>, long> exps;
};

struct GeoImage {
    unsigned zeta_order = 0;  // 0 when theta is not needed
    std::vector<PiChain> chains;
    std::vector<GeoMonomial> images;
};

GeoImage reduce_geometric(const std::vector<GeoProduct>& prods, const GoConfig& cfg = {});

// Generator indices of theta and of each chain in a tower.
struct GeoGenerators {
    std::optional<std::size_t> theta;
    std::vector<std::vector<std::size_t>> chains;  // [chain][depth-1]
};
// Adds theta when needed; add_geo_level then adds the chain generators of one depth.
GeoGenerators add_geo_theta(Tower& t, const GeoImage& g, long lower = 1);
void add_geo_level(Tower& t, const GeoImage& g, std::size_t depth, GeoGenerators& gens, long lower = 1,
                   const std::string& prefix = "y");
TowerElem geo_image_elem(const Tower& t, const GeoImage& g, const GeoGenerators& gens, std::size_t i);
// The root-of-unity factor gamma(theta) and the monomial factor of an image.
TowerElem geo_gamma_elem(const Tower& t, const GeoImage& g, const GeoGenerators& gens, std::size_t i);
TowerElem geo_mono_elem(const Tower& t, const GeoImage& g, const GeoGenerators& gens, std::size_t i);

CycNum eval_geo_product(const GeoProduct& p, long n);

}  // namespace prodring
