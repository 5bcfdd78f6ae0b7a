#include "prodring/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "prodring/linalg.hpp"
#include "prodring/real.hpp"

namespace prodring {

namespace {

std::size_t max_depth(const GeoImage& geo, const HyperTowerPlan& hyp) {
    std::size_t d = 0;
    for (const auto& c : geo.chains) d = std::max(d, c.length);
    for (const auto& c : hyp.chains) d = std::max(d, c.length);
    return d;
}

long mod(long a, long m) { return ((a % m) + m) % m; }

struct MappedProduct {
    RatFun coeff{1};
    TowerElem gamma;
    TowerElem mono;
};

TowerElem power(const MappedProduct& p, long e, unsigned lambda) {
    const Tower* t = p.mono.tower();
    TowerElem r = t->constant(p.coeff.pow(e)) * p.mono.pow(e);
    if (lambda >= 2) r = r * p.gamma.pow(mod(e, lambda));
    return r;
}

}  // namespace

MergedGenerators merge_towers(Tower& t, const GeoImage& geo, const HyperTowerPlan& hyp) {
    MergedGenerators m;
    m.geo = add_geo_theta(t, geo, 1);
    m.hyp = hyper_generators(hyp);
    for (std::size_t d = 1; d <= max_depth(geo, hyp); ++d) {
        add_geo_level(t, geo, d, m.geo, 1, "y");
        add_hyper_level(t, hyp, d, m.hyp, "z");
    }
    return m;
}

NestedProd theta_product(unsigned zeta_order) { return factored_prod(1, 1, RatFun(CycNum::zeta(zeta_order))); }

RpeResult reduce(const ProdExprAst& a, const GoConfig& cfg) {
    RpeResult res;
    std::set<NestedProd> seen;
    for (const auto& t : a.terms)
        for (const auto& [p, e] : t.mono)
            if (seen.insert(p).second) res.inputs.push_back(p);
    res.splits = split_all(res.inputs);
    const long delta = res.splits.empty() ? 0 : res.splits.front().delta;
    res.delta = std::max(a.threshold, std::max(0L, delta - 1));

    std::vector<GeoProduct> geo_prods;
    std::map<std::pair<CycNum, std::size_t>, std::size_t> geo_index;
    for (const auto& s : res.splits)
        for (const auto& [p, e] : s.geo) {
            const std::pair<CycNum, std::size_t> key{base_of(p).constant(), p.depth()};
            if (geo_index.emplace(key, geo_prods.size()).second) geo_prods.push_back({key.first, key.second});
        }
    if (!geo_prods.empty()) res.geo = reduce_geometric(geo_prods, cfg);
    res.hyp = plan_hyper(res.splits);
    res.zeta_order = res.geo.zeta_order;

    unsigned field = std::max(a.field, 1u);
    for (const auto& t : a.terms) field = common_conductor(field, t.coeff.conductor());
    for (const auto& s : res.splits) field = common_conductor(common_conductor(field, s.c.conductor()), s.r.conductor());
    for (const auto& c : res.geo.chains) field = common_conductor(field, c.base.conductor());
    for (const auto& c : res.hyp.chains) field = common_conductor(field, c.base.conductor());
    for (const auto& m : res.geo.images)
        for (const auto& g : m.gamma) field = common_conductor(field, g.conductor());
    if (res.zeta_order >= 2) field = common_conductor(field, CycNum::zeta(res.zeta_order).conductor());
    res.field = field;

    res.tower = std::make_shared<Tower>(field);
    Tower& t = *res.tower;
    const MergedGenerators gens = merge_towers(t, res.geo, res.hyp);
    res.theta = gens.geo.theta;

    std::map<std::size_t, OutputProduct> by_gen;
    for (std::size_t c = 0; c < gens.geo.chains.size(); ++c)
        for (std::size_t d = 0; d < gens.geo.chains[c].size(); ++d) {
            const std::size_t g = gens.geo.chains[c][d];
            by_gen[g] = {t.gen(g).name, factored_prod(d + 1, 1, RatFun(res.geo.chains[c].base)), g, true};
        }
    for (std::size_t c = 0; c < gens.hyp.chains.size(); ++c)
        for (std::size_t d = 0; d < gens.hyp.chains[c].size(); ++d) {
            const std::size_t g = gens.hyp.chains[c][d];
            by_gen[g] = {t.gen(g).name, factored_prod(d + 1, res.hyp.delta, RatFun(res.hyp.chains[c].base)), g, false};
        }

    std::map<NestedProd, MappedProduct> mapped;
    for (std::size_t j = 0; j < res.inputs.size(); ++j) {
        const ProductSplit& s = res.splits[j];
        MappedProduct m{RatFun(s.c) * s.r, t.one(), hyper_image_elem(t, res.hyp.images[j], gens.hyp)};
        for (const auto& [p, e] : s.geo) {
            const std::size_t i = geo_index.at({base_of(p).constant(), p.depth()});
            m.mono = m.mono * geo_mono_elem(t, res.geo, gens.geo, i).pow(e);
            if (res.zeta_order >= 2) m.gamma = m.gamma * geo_gamma_elem(t, res.geo, gens.geo, i).pow(mod(e, res.zeta_order));
        }
        res.images.push_back(power(m, 1, res.zeta_order));
        mapped.emplace(res.inputs[j], std::move(m));
    }

    TowerElem sum = t.constant(RatFun(0));
    for (const auto& term : a.terms) {
        TowerElem x = t.constant(term.coeff);
        for (const auto& [p, e] : term.mono) x = x * power(mapped.at(p), e, res.zeta_order);
        sum = sum + x;
    }
    res.element = sum;

    std::set<std::size_t> used;
    for (const auto& [e, c] : res.element.terms())
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) used.insert(i);
    for (auto& [g, p] : by_gen)
        if (used.count(g)) res.products.push_back(std::move(p));
    if (res.theta && !used.count(*res.theta)) {
        res.theta.reset();
        res.zeta_order = 0;
    }
    std::map<std::size_t, NestedProd> prod_of;
    for (const auto& p : res.products) prod_of[p.gen] = p.prod;
    if (res.theta) prod_of[*res.theta] = theta_product(res.zeta_order);
    res.output.field = field;
    res.output.threshold = res.delta;
    for (const auto& [e, c] : res.element.terms()) {
        Term term;
        term.coeff = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) term.mono.emplace_back(prod_of.at(i), static_cast<int>(e[i]));
        res.output.terms.push_back(std::move(term));
    }
    return res;
}

ZeroTest zero_test(const ProdExprAst& a, const GoConfig& cfg) {
    const RpeResult r = reduce(a, cfg);
    return {r.element.is_zero(), r.delta};
}

std::optional<long> oracle_mismatch(const std::function<CycNum(long)>& reference, const RpeResult& r, long count) {
    const auto out = oracle_eval_range(r.output, r.delta, r.delta + count);
    for (long n = r.delta; n <= r.delta + count; ++n)
        if (reference(n) != out[static_cast<std::size_t>(n - r.delta)]) return n;
    return std::nullopt;
}

std::optional<long> oracle_mismatch(const ProdExprAst& input, const RpeResult& r, long count) {
    const auto in = oracle_eval_range(input, r.delta, r.delta + count);
    return oracle_mismatch([&](long n) { return in[static_cast<std::size_t>(n - r.delta)]; }, r, count);
}

StructuralCheck structural_check(const RpeResult& r, const GoConfig& cfg) {
    StructuralCheck c;
    std::vector<Poly> hb;
    for (const auto& ch : r.hyp.chains) hb.push_back(ch.base);
    try {
        check_shift_coprime(hb);
        c.hyper_shift_coprime = true;
    } catch (const ShiftCoprimalityViolated&) {
    }
    std::vector<CycNum> gb;
    for (const auto& ch : r.geo.chains) gb.push_back(ch.base);
    c.geo_relation_free = solve_go(gb, cfg).rank() == 0;
    return c;
}

namespace {

// q[n - from][i] = Q_i(n+1) / Q_i(n)
struct Ratios {
    long from = 0;
    std::vector<std::vector<CycNum>> q;
};

Ratios ratios(const std::vector<NestedProd>& prods, long n_max) {
    Ratios r;
    for (const auto& p : prods) r.from = std::max(r.from, max_lower(p));
    std::vector<std::vector<CycNum>> tables;
    for (const auto& p : prods) tables.push_back(eval_prod_table(p, n_max + 1));
    for (long n = r.from; n <= n_max; ++n) {
        std::vector<CycNum> row;
        for (const auto& tab : tables)
            row.push_back(tab[static_cast<std::size_t>(n + 1)] / tab[static_cast<std::size_t>(n)]);
        r.q.push_back(std::move(row));
    }
    return r;
}

bool is_relation(const Ratios& r, const std::vector<long>& e) {
    std::optional<CycNum> first;
    for (const auto& row : r.q) {
        CycNum v(1);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) v *= row[i].pow(e[i]);
        if (!first) {
            if (order_of(v) == 0) return false;
            first = v;
        } else if (v != *first) {
            return false;
        }
    }
    return true;
}

std::vector<long> normalized(std::vector<long> e) {
    for (long x : e)
        if (x != 0) {
            if (x < 0)
                for (auto& y : e) y = -y;
            break;
        }
    return e;
}

std::optional<std::vector<long>> lattice_route(const Ratios& r, std::size_t s, long exp_bound) {
    const mpfr_prec_t prec = 256;
    const long shift = 96;
    ZMatrix rows;
    for (std::size_t i = 0; i < s; ++i) {
        ZVector row(s, mpz_class(0));
        row[i] = 1;
        for (const auto& q : r.q) row.push_back(q[i].embed(prec, 1).abs().log().mul_2si(shift).round_to_int());
        rows.push_back(row);
    }
    for (const auto& row : lll_reduce(rows)) {
        std::vector<long> e;
        bool ok = true;
        for (std::size_t i = 0; i < s && ok; ++i) {
            ok = abs(row[i]) <= 64 * std::max(exp_bound, 1L);
            if (ok) e.push_back(row[i].get_si());
        }
        if (!ok || std::all_of(e.begin(), e.end(), [](long x) { return x == 0; })) continue;
        if (is_relation(r, e)) return normalized(e);
    }
    return std::nullopt;
}

std::optional<std::vector<long>> brute_route(const Ratios& r, std::size_t s, long b) {
    std::vector<std::vector<double>> logs;
    for (const auto& q : r.q) {
        std::vector<double> row;
        for (const auto& x : q) row.push_back(x.embed(64, 1).abs().log().to_double());
        logs.push_back(std::move(row));
    }
    std::vector<long> e(s, -b);
    while (true) {
        bool lead = false;
        for (long x : e)
            if (x != 0) {
                lead = x > 0;
                break;
            }
        if (lead) {
            bool cand = true;
            for (const auto& row : logs) {
                double v = 0, scale = 1;
                for (std::size_t i = 0; i < s; ++i) {
                    v += static_cast<double>(e[i]) * row[i];
                    scale += std::fabs(static_cast<double>(e[i]) * row[i]);
                }
                if (std::fabs(v) > 1e-9 * scale) {
                    cand = false;
                    break;
                }
            }
            if (cand && is_relation(r, e)) return e;
        }
        std::size_t i = 0;
        while (i < s && e[i] == b) e[i++] = -b;
        if (i == s) break;
        ++e[i];
    }
    return std::nullopt;
}

}  // namespace

IndependenceReport independence_report(const std::vector<NestedProd>& prods, long n_max, long exp_bound) {
    IndependenceReport rep;
    const std::size_t s = prods.size();
    if (s <= 1 && (s == 0 || !is_geometric(prods[0]) || order_of(base_of(prods[0]).constant()) == 0)) {
        rep.message = "consistent with independence (at most one product)";
        return rep;
    }
    const Ratios r = ratios(prods, n_max);
    if (r.q.empty()) {
        rep.message = "no sample points below the bound";
        return rep;
    }
    if (auto e = lattice_route(r, s, exp_bound)) {
        rep.independent = false;
        rep.relation = *e;
        rep.route = "lattice";
    } else {
        const double space = std::pow(2.0 * static_cast<double>(exp_bound) + 1.0, static_cast<double>(s));
        if (space <= 5e7) {
            if (auto e2 = brute_route(r, s, exp_bound)) {
                rep.independent = false;
                rep.relation = *e2;
                rep.route = "brute force";
            }
        } else {
            rep.route = "lattice only";
        }
    }
    if (rep.independent) {
        rep.message = "consistent with independence";
    } else {
        rep.message = "relation found:";
        for (long x : rep.relation) rep.message += " " + std::to_string(x);
    }
    return rep;
}

IndependenceReport independence_report(const RpeResult& r, long n_max, long exp_bound) {
    std::vector<NestedProd> prods;
    for (const auto& p : r.products) prods.push_back(p.prod);
    return independence_report(prods, n_max, exp_bound);
}

nlohmann::json to_json(const RpeResult& r) {
    nlohmann::json j;
    j["delta"] = r.delta;
    j["field_conductor"] = r.field;
    j["zeta_order"] = r.zeta_order;
    std::map<std::size_t, std::string> ids;
    nlohmann::json prods = nlohmann::json::array();
    auto add = [&](const std::string& id, const NestedProd& p, std::size_t gen) {
        ids[gen] = id;
        prods.push_back({{"id", id},
                         {"depth", p.depth()},
                         {"lower", p.lowers[0]},
                         {"base", base_of(p).str(product_var_name(p.depth() - 1))},
                         {"text", print_prod(p)}});
    };
    if (r.theta) add(r.tower->gen(*r.theta).name, theta_product(r.zeta_order), *r.theta);
    for (const auto& p : r.products) add(p.id, p.prod, p.gen);
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : r.element.terms()) {
        nlohmann::json ex = nlohmann::json::object();
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) ex[ids.at(i)] = e[i];
        terms.push_back({{"coeff", c.str("n")}, {"exponents", ex}});
    }
    j["products"] = prods;
    j["expression"] = terms;
    return j;
}

ProdExprAst from_json(const nlohmann::json& j) {
    std::map<std::string, NestedProd> prods;
    unsigned field = j.value("field_conductor", 1u);
    for (const auto& p : j.at("products")) {
        const ProdExprAst a = parse(p.at("text").get<std::string>());
        if (a.terms.size() != 1 || a.terms[0].mono.size() != 1) throw Error("product text is not a single product");
        prods[p.at("id").get<std::string>()] = a.terms[0].mono[0].first;
        field = common_conductor(field, a.field);
    }
    ProdExprAst out;
    out.threshold = j.value("delta", 0L);
    for (const auto& t : j.at("expression")) {
        const ProdExprAst c = parse(t.at("coeff").get<std::string>());
        field = common_conductor(field, c.field);
        Term term;
        term.coeff = c.terms.empty() ? RatFun(0) : c.terms[0].coeff;
        if (c.terms.size() > 1 || (!c.terms.empty() && !c.terms[0].mono.empty()))
            throw Error("coefficient is not a rational function");
        for (const auto& [id, e] : t.at("exponents").items()) term.mono.emplace_back(prods.at(id), e.get<int>());
        out.terms.push_back(std::move(term));
    }
    out.field = field;
    return out;
}

}  // namespace prodring
