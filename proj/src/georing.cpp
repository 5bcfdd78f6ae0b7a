#include "prodring/georing.hpp"

#include <algorithm>

#include "prodring/linalg.hpp"

namespace prodring {

namespace {

CycNum power_product(const std::vector<CycNum>& a, const std::vector<long>& v) {
    CycNum r(1);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (v[i] != 0) r *= a[i].pow(v[i]);
    return r;
}

std::vector<long> to_longs(const ZVector& z) {
    std::vector<long> out;
    for (const auto& x : z) {
        if (!x.fits_slong_p()) throw Error("relation exponent out of range");
        out.push_back(x.get_si());
    }
    return out;
}

ZMatrix to_z(const std::vector<std::vector<long>>& m) {
    ZMatrix out;
    for (const auto& r : m) {
        ZVector z;
        for (long x : r) z.emplace_back(x);
        out.push_back(z);
    }
    return out;
}

ZMatrix transpose(const ZMatrix& a, std::size_t cols) {
    ZMatrix t(cols, ZVector(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
    return t;
}

// Lattice {v in Z^w : v in Q-span(m)}.
ZMatrix saturation(const ZMatrix& m, std::size_t w) {
    if (m.empty()) return {};
    const ZMatrix right = integer_left_kernel(transpose(m, w));
    if (right.empty()) {
        ZMatrix id(w, ZVector(w, mpz_class(0)));
        for (std::size_t i = 0; i < w; ++i) id[i][i] = 1;
        return id;
    }
    return integer_left_kernel(transpose(right, w));
}

bool is_saturated(const ZMatrix& m, std::size_t w) { return hermite_normal_form(m) == hermite_normal_form(saturation(m, w)); }

// Pairwise coprime integers > 1 over which every input factors.
std::vector<BigInt> coprime_base(std::vector<BigInt> xs) {
    std::vector<BigInt> base;
    for (auto& x : xs)
        if (x > 1) base.push_back(x);
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(base.begin(), base.end());
        base.erase(std::unique(base.begin(), base.end()), base.end());
        for (std::size_t i = 0; i < base.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < base.size() && !changed; ++j) {
                BigInt g = gcd(base[i], base[j]);
                if (g == 1) continue;
                BigInt a = base[i] / g, b = base[j] / g;
                base.erase(base.begin() + static_cast<long>(j));
                base.erase(base.begin() + static_cast<long>(i));
                for (const BigInt& y : {g, a, b})
                    if (y > 1) base.push_back(y);
                changed = true;
            }
    }
    return base;
}

long valuation(BigInt x, const BigInt& p) {
    long e = 0;
    while (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) {
        x /= p;
        ++e;
    }
    return e;
}

RelationLattice with_cofactors(const std::vector<CycNum>& alphas, const ZMatrix& basis) {
    RelationLattice res;
    res.elements = alphas;
    for (const auto& row : basis) {
        auto v = to_longs(row);
        if (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; })) continue;
        const CycNum c = power_product(alphas, v);
        if (order_of(c) == 0) throw Error("relation verification failed");
        res.basis.push_back(std::move(v));
        res.cofactors.push_back(c);
    }
    return res;
}

RelationLattice solve_rational(const std::vector<CycNum>& alphas) {
    std::vector<BigInt> parts;
    for (const auto& a : alphas) {
        const BigRat q = a.rational();
        parts.push_back(abs(q.get_num()));
        parts.push_back(q.get_den());
    }
    const auto base = coprime_base(parts);
    ZMatrix m;
    for (const auto& a : alphas) {
        const BigRat q = a.rational();
        ZVector row;
        for (const auto& p : base) row.emplace_back(valuation(abs(q.get_num()), p) - valuation(q.get_den(), p));
        m.push_back(row);
    }
    ZMatrix ker;
    if (base.empty()) {
        ker.assign(alphas.size(), ZVector(alphas.size(), mpz_class(0)));
        for (std::size_t i = 0; i < alphas.size(); ++i) ker[i][i] = 1;
    } else {
        ker = integer_left_kernel(m);
    }
    return with_cofactors(alphas, ker);
}

// Norm from Q(zeta_n) to Q.
BigRat norm(const CycNum& a, unsigned n) {
    const CycField& f = CycField::get(n);
    if (a.is_rational()) {
        BigRat r = 1;
        for (unsigned i = 0; i < f.degree(); ++i) r *= a.rational();
        return r;
    }
    const CycNum b = a.lift_to(n);
    CycNum p(1);
    for (unsigned k : f.units()) p *= b.galois(k);
    return p.rational();
}

// Candidate relations from a reduced basis of [I | S * log|conjugates| | S * arguments | W * norm valuations],
// with extra rows S * 2 pi / w for the argument columns, w the number of roots of unity.
std::optional<ZMatrix> candidates(const std::vector<CycNum>& alphas, unsigned n, mpfr_prec_t prec, long bound) {
    const std::size_t w = alphas.size();
    std::vector<unsigned> emb;
    for (unsigned k : CycField::get(n).units())
        if (2 * k <= n || n <= 2) emb.push_back(k);
    std::vector<BigInt> parts;
    std::vector<BigRat> norms;
    for (const auto& a : alphas) {
        norms.push_back(norm(a, n));
        parts.push_back(abs(norms.back().get_num()));
        parts.push_back(norms.back().get_den());
    }
    const auto base = coprime_base(parts);
    const long shift = static_cast<long>(prec) / 2;
    const BigInt heavy = BigInt(1) << static_cast<unsigned long>(shift + 16);
    const long roots = n % 2 == 0 ? n : 2 * static_cast<long>(n);
    const BigInt turn = (Real::pi(prec) * Real(2, prec) / Real(roots, prec)).mul_2si(shift).round_to_int();
    ZMatrix rows;
    for (std::size_t i = 0; i < w; ++i) {
        ZVector row(w, mpz_class(0));
        row[i] = 1;
        const CycNum a = alphas[i].lift_to(n);
        std::vector<Complex> z;
        for (unsigned k : emb) z.push_back(a.embed(prec, k));
        for (const auto& c : z) row.push_back(c.abs().log().mul_2si(shift).round_to_int());
        for (const auto& c : z) row.push_back(c.arg().mul_2si(shift).round_to_int());
        for (const auto& p : base)
            row.push_back(heavy * (valuation(abs(norms[i].get_num()), p) - valuation(norms[i].get_den(), p)));
        rows.push_back(row);
    }
    for (std::size_t j = 0; j < emb.size(); ++j) {
        ZVector row(w + 2 * emb.size() + base.size(), mpz_class(0));
        row[w + emb.size() + j] = turn;
        rows.push_back(row);
    }
    rows = lll_reduce(rows);
    const BigInt tol = BigInt(static_cast<long>(w) * bound * 4 + 4);
    ZMatrix out;
    for (const auto& r : rows) {
        if (std::all_of(r.begin(), r.begin() + static_cast<long>(w), [](const mpz_class& x) { return x == 0; })) continue;
        bool small = true;
        for (std::size_t j = w; j < r.size() && small; ++j) small = abs(r[j]) <= tol;
        if (!small) continue;
        for (std::size_t j = 0; j < w; ++j)
            if (abs(r[j]) > bound) return std::nullopt;
        out.emplace_back(r.begin(), r.begin() + static_cast<long>(w));
    }
    return out.empty() ? out : hermite_normal_form(out);
}

bool all_verified(const std::vector<CycNum>& alphas, const ZMatrix& cand) {
    for (const auto& r : cand)
        if (order_of(power_product(alphas, to_longs(r))) == 0) return false;
    return true;
}

}  // namespace

std::vector<std::vector<long>> RelationLattice::strict_basis() const {
    if (basis.empty()) return {};
    unsigned t = 1;
    std::vector<unsigned> ord;
    for (const auto& c : cofactors) {
        ord.push_back(order_of(c));
        t = static_cast<unsigned>(lcm_ul(t, ord.back()));
    }
    const CycNum z = t >= 2 ? CycNum::zeta(t) : CycNum(1);
    ZMatrix col;
    for (const auto& c : cofactors) {
        long a = 0;
        while (!(z.pow(a) == c)) ++a;
        col.push_back({mpz_class(a)});
    }
    col.push_back({mpz_class(t)});
    ZMatrix out;
    for (const auto& k : integer_left_kernel(col)) {
        std::vector<long> v(elements.size(), 0);
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const long c = k[j].get_si();
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += c * basis[j][i];
        }
        ZVector z2;
        for (long x : v) z2.emplace_back(x);
        out.push_back(z2);
    }
    std::vector<std::vector<long>> res;
    for (const auto& r : hermite_normal_form(out)) res.push_back(to_longs(r));
    return res;
}

RelationLattice solve_go(const std::vector<CycNum>& alphas, const GoConfig& cfg) {
    for (const auto& a : alphas)
        if (a.is_zero()) throw ZeroElement();
    if (alphas.empty()) return {};
    if (std::all_of(alphas.begin(), alphas.end(), [](const CycNum& a) { return a.is_rational(); }))
        return solve_rational(alphas);
    unsigned n = 1;
    for (const auto& a : alphas) n = common_conductor(n, a.conductor());
    std::optional<ZMatrix> prev;
    for (mpfr_prec_t prec = cfg.precision; prec <= cfg.max_precision; prec *= 2) {
        auto cand = candidates(alphas, n, prec, cfg.max_exponent);
        if (!cand || !all_verified(alphas, *cand)) {
            prev.reset();
            continue;
        }
        if (prev && *prev == *cand) return with_cofactors(alphas, *cand);
        prev = cand;
    }
    throw RelationSearchExhausted("no stable verified relation lattice up to " + std::to_string(cfg.max_precision) +
                                  " bits with exponent bound " + std::to_string(cfg.max_exponent));
}

Depth1Reduction reduce_depth1(const std::vector<CycNum>& bases, const GoConfig& cfg) {
    const std::size_t w = bases.size();
    const RelationLattice lat = solve_go(bases, cfg);
    Depth1Reduction res;
    ZMatrix rows = to_z(lat.basis);
    const std::size_t r = rows.size();
    std::vector<std::size_t> picked;
    for (std::size_t j = 0; j < w && rows.size() < w; ++j) {
        ZMatrix trial = rows;
        ZVector e(w, mpz_class(0));
        e[j] = 1;
        trial.push_back(e);
        if (hermite_normal_form(trial).size() != trial.size() || !is_saturated(trial, w)) continue;
        rows = trial;
        picked.push_back(j);
    }
    if (rows.size() < w) {
        ZMatrix u;
        hermite_normal_form(transpose(rows, w), &u);
        QMatrix uq;
        for (const auto& row : u) uq.emplace_back(row.begin(), row.end());
        auto inv = invert(uq);
        if (!inv) throw Error("singular completion transform");
        for (std::size_t j = rows.size(); j < w; ++j) {
            ZVector c;
            for (std::size_t i = 0; i < w; ++i) c.emplace_back((*inv)[i][j]);
            rows.push_back(c);
        }
    }
    QMatrix uq;
    for (const auto& row : rows) uq.emplace_back(row.begin(), row.end());
    auto winv = invert(uq);
    if (!winv) throw Error("relation lattice completion is not unimodular");
    std::vector<std::vector<long>> coeff(w, std::vector<long>(w));
    for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = 0; j < w; ++j) {
            const mpq_class& x = (*winv)[i][j];
            if (x.get_den() != 1) throw Error("relation lattice completion is not unimodular");
            coeff[i][j] = x.get_num().get_si();
        }
    for (std::size_t k = r; k < w; ++k) res.gens.push_back(power_product(bases, to_longs(rows[k])));
    std::vector<CycNum> tors(w, CycNum(1));
    for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (coeff[i][j] != 0) tors[i] *= lat.cofactors[j].pow(coeff[i][j]);
    for (const auto& t : tors) res.lambda = static_cast<unsigned>(lcm_ul(res.lambda, order_of(t)));
    if (res.lambda >= 2) res.zeta = CycNum::zeta(res.lambda);
    for (std::size_t i = 0; i < w; ++i) {
        long m = 0;
        while (!(res.zeta.pow(m) == tors[i])) ++m;
        res.mu.push_back(m);
        res.v.emplace_back(coeff[i].begin() + static_cast<long>(r), coeff[i].end());
        CycNum check = res.zeta.pow(m) * power_product(res.gens, res.v.back());
        if (!(check == bases[i])) throw Error("depth-one reduction does not reproduce its input");
    }
    return res;
}

unsigned long period(const TowerElem& a, unsigned long cap) {
    TowerElem cur = a;
    for (unsigned long n = 1; n <= cap; ++n) {
        cur = cur.sigma();
        if (cur == a) return n;
    }
    throw PeriodCapExceeded(cap);
}

unsigned long period(const Tower& t, std::size_t gen) {
    const Generator& g = t.gen(gen);
    if (g.kind != Generator::A) throw Error("period is defined here for A-generators only");
    unsigned long cap = 1;
    for (std::size_t i = 0; i <= g.depth; ++i) cap *= g.order;
    return period(t.gen_elem(gen), cap);
}

std::vector<std::vector<CycNum>> idempotent_coeffs(unsigned lambda, const CycNum& zeta) {
    std::vector<std::vector<CycNum>> out;
    for (unsigned k = 0; k < lambda; ++k) {
        const unsigned j0 = lambda - 1 - k;
        std::vector<CycNum> p{CycNum(1)};
        CycNum den(1);
        for (unsigned i = 0; i < lambda; ++i) {
            if (i == j0) continue;
            const CycNum zi = zeta.pow(i);
            std::vector<CycNum> q(p.size() + 1, CycNum(0));
            for (std::size_t d = 0; d < p.size(); ++d) {
                q[d + 1] += p[d];
                q[d] -= zi * p[d];
            }
            p = std::move(q);
            den *= zeta.pow(j0) - zi;
        }
        const CycNum inv = den.inverse();
        for (auto& c : p) c *= inv;
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<TowerElem> idempotents(const Tower& t, std::size_t theta) {
    const Generator& g = t.gen(theta);
    if (g.kind != Generator::A || g.quotient.depth() != 0) throw Error("theta must be an A-generator with constant quotient");
    const CycNum zeta = g.quotient.free_coeff().constant();
    std::vector<TowerElem> out;
    for (const auto& c : idempotent_coeffs(g.order, zeta)) {
        TowerElem e = t.constant(RatFun(0));
        for (std::size_t j = 0; j < c.size(); ++j) e = e + t.constant(RatFun(c[j])) * t.gen_elem(theta, static_cast<long>(j));
        out.push_back(e);
    }
    return out;
}

std::vector<CycNum> collapse_values(const std::vector<CycNum>& values, unsigned lambda, const CycNum& zeta) {
    // e_i = (1/lambda) sum_j (zeta^-(lambda-1-i) theta)^j
    std::vector<CycNum> pw;
    for (unsigned t = 0; t < lambda; ++t) pw.push_back(t == 0 ? CycNum(1) : pw.back() * zeta);
    std::vector<CycNum> out(lambda, CycNum(0));
    const CycNum inv(BigRat(1, lambda));
    for (unsigned i = 0; i < lambda; ++i) {
        const CycNum& b = values[lambda - 1 - i];
        if (b.is_zero()) continue;
        const unsigned j0 = lambda - 1 - i;
        const CycNum bb = b * inv;
        for (unsigned j = 0; j < lambda; ++j) out[j] += bb * pw[(lambda - (j0 * j) % lambda) % lambda];
    }
    return out;
}

Collapse collapse_a_chains(const Tower& t, unsigned m) {
    Collapse res;
    res.lambda = std::max(m, 1u);
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t.gen(i).kind != Generator::A) throw Error("collapse expects a tower of A-generators");
        res.periods.push_back(period(t, i));
        res.lambda = static_cast<unsigned>(lcm_ul(res.lambda, res.periods.back()));
    }
    res.zeta = res.lambda >= 2 ? CycNum::zeta(res.lambda) : CycNum(1);
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::vector<CycNum> vals;
        for (unsigned n = 0; n < res.lambda; ++n) vals.push_back(t.gen_value(i, n));
        res.images.push_back(collapse_values(vals, res.lambda, res.zeta));
    }
    return res;
}

GeoImage reduce_geometric(const std::vector<GeoProduct>& prods, const GoConfig& cfg) {
    std::vector<CycNum> bases;
    std::vector<std::size_t> chain_of, len;
    for (const auto& p : prods) {
        if (p.base.is_zero()) throw ZeroElement();
        if (p.depth == 0) throw Error("geometric product of depth zero");
        auto it = std::find(bases.begin(), bases.end(), p.base);
        const std::size_t c = static_cast<std::size_t>(it - bases.begin());
        if (it == bases.end()) {
            bases.push_back(p.base);
            len.push_back(0);
        }
        chain_of.push_back(c);
        len[c] = std::max(len[c], p.depth);
    }
    const Depth1Reduction d1 = reduce_depth1(bases, cfg);
    GeoImage res;
    std::size_t a_len = 0;
    std::vector<std::size_t> pi_len(d1.gens.size(), 0);
    for (std::size_t l = 0; l < bases.size(); ++l) {
        if (d1.mu[l] != 0) a_len = std::max(a_len, len[l]);
        for (std::size_t r = 0; r < d1.gens.size(); ++r)
            if (d1.v[l][r] != 0) pi_len[r] = std::max(pi_len[r], len[l]);
    }
    std::vector<std::size_t> chain_index(d1.gens.size(), 0);
    for (std::size_t r = 0; r < d1.gens.size(); ++r) {
        if (pi_len[r] == 0) continue;
        chain_index[r] = res.chains.size();
        res.chains.push_back({d1.gens[r], pi_len[r]});
    }
    std::vector<std::vector<CycNum>> a_values;  // [depth-1][n], n < lambda'
    if (a_len > 0) {
        Tower at(d1.zeta.conductor());
        at.add_chain(Generator::A, RatFun(d1.zeta), a_len, 1, d1.lambda);
        const Collapse col = collapse_a_chains(at, d1.lambda);
        res.zeta_order = col.lambda;
        for (std::size_t k = 0; k < a_len; ++k) {
            std::vector<CycNum> vals;
            for (unsigned n = 0; n < col.lambda; ++n) vals.push_back(at.gen_value(k, n));
            a_values.push_back(vals);
        }
    }
    for (std::size_t i = 0; i < prods.size(); ++i) {
        const std::size_t l = chain_of[i], k = prods[i].depth;
        GeoMonomial m;
        if (res.zeta_order >= 2 && d1.mu[l] != 0) {
            std::vector<CycNum> vals;
            for (const auto& x : a_values[k - 1]) vals.push_back(x.pow(d1.mu[l]));
            m.gamma = collapse_values(vals, res.zeta_order, CycNum::zeta(res.zeta_order));
        } else {
            m.gamma = {CycNum(1)};
        }
        for (std::size_t r = 0; r < d1.gens.size(); ++r)
            if (d1.v[l][r] != 0) m.exps[{chain_index[r], k}] = d1.v[l][r];
        res.images.push_back(std::move(m));
    }
    return res;
}

GeoGenerators add_geo_theta(Tower& t, const GeoImage& g, long lower) {
    GeoGenerators gens;
    gens.chains.resize(g.chains.size());
    if (g.zeta_order >= 2)
        gens.theta = t.add_A(g.zeta_order, t.constant(RatFun(CycNum::zeta(g.zeta_order))), lower, CycNum(1), "th");
    return gens;
}

void add_geo_level(Tower& t, const GeoImage& g, std::size_t depth, GeoGenerators& gens, long lower,
                   const std::string& prefix) {
    for (std::size_t c = 0; c < g.chains.size(); ++c) {
        if (g.chains[c].length < depth) continue;
        TowerElem q = t.constant(RatFun(g.chains[c].base));
        for (std::size_t j : gens.chains[c]) q = q * t.gen_elem(j);
        gens.chains[c].push_back(
            t.add_P(q, lower, CycNum(1), prefix + std::to_string(c + 1) + "_" + std::to_string(depth)));
    }
}

TowerElem geo_gamma_elem(const Tower& t, const GeoImage& g, const GeoGenerators& gens, std::size_t i) {
    const GeoMonomial& m = g.images.at(i);
    TowerElem gamma = t.constant(RatFun(0));
    for (std::size_t j = 0; j < m.gamma.size(); ++j) {
        if (m.gamma[j].is_zero()) continue;
        TowerElem term = t.constant(RatFun(m.gamma[j]));
        if (j > 0) term = term * t.gen_elem(*gens.theta, static_cast<long>(j));
        gamma = gamma + term;
    }
    return gamma;
}

TowerElem geo_mono_elem(const Tower& t, const GeoImage& g, const GeoGenerators& gens, std::size_t i) {
    TowerElem mono = t.one();
    for (const auto& [key, e] : g.images.at(i).exps)
        mono = mono * t.gen_elem(gens.chains.at(key.first).at(key.second - 1), e);
    return mono;
}

TowerElem geo_image_elem(const Tower& t, const GeoImage& g, const GeoGenerators& gens, std::size_t i) {
    return geo_gamma_elem(t, g, gens, i) * geo_mono_elem(t, g, gens, i);
}

CycNum eval_geo_product(const GeoProduct& p, long n) {
    if (n <= 0) return CycNum(1);
    BigInt e;
    mpz_bin_uiui(e.get_mpz_t(), static_cast<unsigned long>(n) + p.depth - 1, p.depth);
    if (!e.fits_slong_p()) throw Error("geometric exponent out of range");
    return p.base.pow(e.get_si());
}

}  // namespace prodring
