#include "prodring/hyperring.hpp"

#include <algorithm>

namespace prodring {

void check_shift_coprime(const std::vector<Poly>& bases) {
    for (std::size_t i = 0; i < bases.size(); ++i)
        for (std::size_t j = i + 1; j < bases.size(); ++j)
            if (bases[i] == bases[j] || !integer_roots(resultant_shift(bases[i], bases[j])).empty())
                throw ShiftCoprimalityViolated(bases[i].str() + " and " + bases[j].str());
}

HyperTowerPlan plan_hyper(const std::vector<ProductSplit>& splits) {
    HyperTowerPlan plan;
    if (splits.empty()) return plan;
    plan.delta = splits.front().delta;
    std::map<Poly, std::size_t> len;
    for (const auto& s : splits) {
        if (s.delta != plan.delta) throw Error("splits do not share one lower bound");
        for (const auto& [p, e] : s.hyp) {
            if (!p.factored() || base_of(p).den() != Poly(1)) throw Error("hypergeometric factor not in factored form");
            for (long l : p.lowers)
                if (l != plan.delta) throw Error("hypergeometric factor is not delta-refined");
            auto& m = len[base_of(p).num()];
            m = std::max(m, p.depth());
        }
    }
    std::vector<Poly> bases;
    for (const auto& [b, m] : len) {
        for (long r : integer_roots(b))
            if (r >= plan.delta) throw InvalidLowerBound(b.str(), r);
        bases.push_back(b);
        plan.chains.push_back({b, m});
    }
    check_shift_coprime(bases);
    for (const auto& s : splits) {
        HyperMonomial mono;
        for (const auto& [p, e] : s.hyp) {
            const std::size_t c = static_cast<std::size_t>(
                std::find(bases.begin(), bases.end(), base_of(p).num()) - bases.begin());
            if ((mono[{c, p.depth()}] += e) == 0) mono.erase({c, p.depth()});
        }
        plan.images.push_back(std::move(mono));
    }
    return plan;
}

HyperGenerators hyper_generators(const HyperTowerPlan& plan) {
    HyperGenerators g;
    g.chains.resize(plan.chains.size());
    return g;
}

void add_hyper_level(Tower& t, const HyperTowerPlan& plan, std::size_t depth, HyperGenerators& gens,
                     const std::string& prefix) {
    for (std::size_t c = 0; c < plan.chains.size(); ++c) {
        if (plan.chains[c].length < depth) continue;
        TowerElem q = t.constant(RatFun(plan.chains[c].base.shift(1)));
        for (std::size_t j : gens.chains[c]) q = q * t.gen_elem(j);
        gens.chains[c].push_back(
            t.add_P(q, plan.delta, CycNum(1), prefix + std::to_string(c + 1) + "_" + std::to_string(depth)));
    }
}

HyperGenerators build_hyper_tower(Tower& t, const HyperTowerPlan& plan) {
    HyperGenerators g = hyper_generators(plan);
    std::size_t top = 0;
    for (const auto& c : plan.chains) top = std::max(top, c.length);
    for (std::size_t d = 1; d <= top; ++d) add_hyper_level(t, plan, d, g);
    return g;
}

TowerElem hyper_image_elem(const Tower& t, const HyperMonomial& m, const HyperGenerators& gens) {
    TowerElem r = t.one();
    for (const auto& [key, e] : m) r = r * t.gen_elem(gens.chains.at(key.first).at(key.second - 1), e);
    return r;
}

}  // namespace prodring
