#include "prodring/preprocess.hpp"

#include <algorithm>
#include <map>

#include "prodring/linalg.hpp"

namespace prodring {

NestedProd factored_prod(std::size_t depth, long lower, const RatFun& base) {
    return factored_prod(std::vector<long>(depth, lower), base);
}

NestedProd factored_prod(const std::vector<long>& lowers, const RatFun& base) {
    NestedProd p;
    p.lowers = lowers;
    p.mults.assign(lowers.size(), RatFun(1));
    p.mults.back() = base;
    return p;
}

const RatFun& base_of(const NestedProd& p) { return p.mults.back(); }

bool is_geometric(const NestedProd& p) { return p.factored() && base_of(p).is_constant(); }

long max_lower(const NestedProd& p) { return *std::max_element(p.lowers.begin(), p.lowers.end()); }

ProdPowers combine(const ProdPowers& f) {
    std::map<NestedProd, long> m;
    std::vector<NestedProd> order;
    for (const auto& [p, e] : f) {
        if (!m.count(p)) order.push_back(p);
        m[p] += e;
    }
    ProdPowers out;
    for (const auto& p : order)
        if (m[p] != 0) out.emplace_back(p, m[p]);
    return out;
}

namespace {

// Square roots of primes (or of -p when only that one exists) lying in Q(zeta_n).
std::vector<CycNum> sqrt_candidates(unsigned n) {
    std::vector<CycNum> out;
    if (n == 1) return out;
    for (auto [p, e] : factor_ul(n)) {
        (void)e;
        if (p == 2) {
            if (n % 8 == 0) out.push_back(sqrt_embed(2));
            continue;
        }
        if (p % 4 == 1 || n % 4 == 0) {
            out.push_back(sqrt_embed(p));
            continue;
        }
        CycNum g(0);
        for (unsigned a = 1; a < p; ++a) {
            mpz_class aa(a), pp(p);
            g += mpz_legendre(aa.get_mpz_t(), pp.get_mpz_t()) > 0 ? CycNum::zeta_pow(p, a) : -CycNum::zeta_pow(p, a);
        }
        out.push_back(g);
    }
    return out;
}

void rational_atoms(const BigRat& q, std::vector<std::pair<CycNum, long>>& out) {
    if (q < 0) out.emplace_back(CycNum(-1), 1);
    for (int side = 0; side < 2; ++side) {
        BigInt v = abs(side == 0 ? q.get_num() : q.get_den());
        const long sgn = side == 0 ? 1 : -1;
        for (unsigned long p = 2; v > 1; ++p) {
            if (BigInt(p) * p > v) {
                out.emplace_back(CycNum(v), sgn);
                break;
            }
            long e = 0;
            while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
                v /= p;
                ++e;
            }
            if (e) out.emplace_back(CycNum(static_cast<long>(p)), sgn * e);
            if (p > 1000000) {
                if (v > 1) out.emplace_back(CycNum(v), sgn);
                break;
            }
        }
    }
}

BigInt binom(const BigInt& x, long j) {
    BigInt num = 1, den = 1;
    for (long i = 0; i < j; ++i) {
        num *= x - i;
        den *= i + 1;
    }
    return num / den;
}

}  // namespace

std::vector<std::pair<CycNum, long>> split_constant(const CycNum& u) {
    if (u.is_zero()) throw ZeroElement();
    std::vector<std::pair<CycNum, long>> out;
    if (u.is_rational()) {
        rational_atoms(u.rational(), out);
        return out;
    }
    const CycNum v = u.lowered();
    const unsigned n = v.conductor();
    const unsigned t = n % 2 == 0 ? n : 2 * n;
    const auto sq = sqrt_candidates(n);
    for (std::size_t mask = 0; mask < (std::size_t(1) << sq.size()); ++mask) {
        CycNum s(1);
        for (std::size_t i = 0; i < sq.size(); ++i)
            if (mask >> i & 1) s *= sq[i];
        const CycNum w = v / s;
        for (unsigned a = 0; a < t; ++a) {
            const CycNum om = CycNum::zeta_pow(t, a);
            const CycNum q = w / om;
            if (!q.is_rational()) continue;
            BigRat qr = q.rational();
            CycNum root = om;
            if (qr < 0 && !(root == CycNum(1))) {
                root = -root;
                qr = -qr;
            }
            if (!root.is_one()) out.emplace_back(root, 1);
            for (std::size_t i = 0; i < sq.size(); ++i)
                if (mask >> i & 1) out.emplace_back(sq[i], 1);
            rational_atoms(qr, out);
            return out;
        }
    }
    out.emplace_back(v, 1);
    return out;
}

ProdPowers factored_form(const NestedProd& p, unsigned field) {
    ProdPowers out;
    for (std::size_t i = 0; i < p.depth(); ++i) {
        if (p.mults[i].is_one()) continue;
        std::vector<long> lw(p.lowers.begin(), p.lowers.begin() + static_cast<long>(i) + 1);
        Factorization f = factorize(p.mults[i], field);
        if (!f.content.is_one())
            for (const auto& [a, e] : split_constant(f.content)) out.emplace_back(factored_prod(lw, RatFun(a)), e);
        for (const auto& [g, e] : f.factors) out.emplace_back(factored_prod(lw, RatFun(g)), e);
    }
    return out;
}

SyncResult sync_lower_bounds(const ProdPowers& factors, long delta) {
    SyncResult res;
    for (const auto& [p, e] : factors) {
        if (delta == 0 || std::all_of(p.lowers.begin(), p.lowers.end(), [&](long l) { return l == delta; })) {
            res.factors.emplace_back(p, e);
            continue;
        }
        NestedProd sub = p;
        for (std::size_t j = 0; j < p.depth(); ++j) {
            const CycNum v = eval_prod(sub, delta - 1);
            if (j == 0) res.c *= v.pow(e);
            else if (!v.is_one()) res.factors.emplace_back(factored_prod(j, delta, RatFun(v)), e);
            sub = sub.inner();
        }
        res.factors.emplace_back(factored_prod(p.depth(), delta, base_of(p)), e);
    }
    res.factors = combine(res.factors);
    return res;
}

SyncResult geometric_to_one(const NestedProd& g, long e) {
    SyncResult res;
    const long l = g.lowers[0];
    const long m = static_cast<long>(g.depth());
    const CycNum u = base_of(g).constant();
    if (l == 1) {
        res.factors.emplace_back(g, e);
        return res;
    }
    // C(n-l+m, m) = c0 + sum_j e_j C(n-1+j, j) on m+1 points n >= max(l-1, 0).
    const long n0 = std::max(l - 1, 0L);
    QMatrix a;
    std::vector<mpq_class> b;
    for (long r = 0; r <= m; ++r) {
        const long n = n0 + r;
        std::vector<mpq_class> row;
        for (long j = 0; j <= m; ++j) row.emplace_back(binom(BigInt(n - 1 + j), j));
        a.push_back(row);
        b.emplace_back(binom(BigInt(n - l + m), m));
    }
    auto sol = solve_linear(a, b);
    if (!sol) throw Error("geometric resynchronization failed");
    for (long j = 0; j <= m; ++j) {
        mpq_class x = (*sol)[j];
        x.canonicalize();
        if (x.get_den() != 1 || !x.get_num().fits_slong_p()) throw Error("non-integral geometric resynchronization");
        const long k = x.get_num().get_si() * e;
        if (k == 0) continue;
        if (j == 0) res.c *= u.pow(k);
        else res.factors.emplace_back(factored_prod(static_cast<std::size_t>(j), 1, RatFun(u)), k);
    }
    return res;
}

namespace {

// Atom-split geometric factors, merge equal ones, reduce root-of-unity exponents.
ProdPowers normalize_geo(const ProdPowers& geo) {
    ProdPowers atoms;
    for (const auto& [p, e] : geo)
        for (const auto& [a, k] : split_constant(base_of(p).constant()))
            atoms.emplace_back(factored_prod(p.depth(), p.lowers[0], RatFun(a)), e * k);
    ProdPowers out;
    for (auto [p, e] : combine(atoms)) {
        const unsigned ord = order_of(base_of(p).constant());
        if (ord > 0) e = (e % static_cast<long>(ord) + static_cast<long>(ord)) % static_cast<long>(ord);
        if (e != 0) out.emplace_back(p, e);
    }
    return out;
}

}  // namespace

SyncResult synchronize(const ProdPowers& factors, long delta) {
    SyncResult s = sync_lower_bounds(factors, delta);
    SyncResult res;
    res.c = s.c;
    ProdPowers geo;
    for (const auto& [p, e] : s.factors) {
        if (!is_geometric(p)) {
            res.factors.emplace_back(p, e);
            continue;
        }
        SyncResult g = geometric_to_one(p, e);
        res.c *= g.c;
        geo.insert(geo.end(), g.factors.begin(), g.factors.end());
    }
    for (auto& pe : normalize_geo(geo)) res.factors.push_back(pe);
    return res;
}

std::vector<Poly> leftmost_representatives(const std::vector<Poly>& bases) {
    std::vector<Poly> reps;
    for (const Poly& b : bases) {
        bool placed = false;
        for (Poly& f : reps) {
            if (f.degree() != b.degree()) continue;
            auto k = shift_distance(f, b);
            if (!k) continue;
            if (*k < 0) f = b;
            placed = true;
            break;
        }
        if (!placed) reps.push_back(b);
    }
    return reps;
}

Reduction shift_coprime_reduce(const ProdPowers& hyp, long delta) {
    std::vector<Poly> bases;
    for (const auto& [p, e] : hyp) bases.push_back(base_of(p).num());
    return shift_coprime_reduce(hyp, delta, leftmost_representatives(bases));
}

Reduction shift_coprime_reduce(const ProdPowers& hyp, long delta, const std::vector<Poly>& reps) {
    Reduction res;
    std::map<std::size_t, std::map<Poly, long>> work;
    std::vector<std::pair<NestedProd, long>> geo;
    for (const auto& [p, e] : hyp) work[p.depth()][base_of(p).num()] += e;
    std::map<std::pair<std::size_t, Poly>, long> kept;
    while (!work.empty()) {
        auto top = std::prev(work.end());
        const std::size_t d = top->first;
        std::map<Poly, long> level = std::move(top->second);
        work.erase(top);
        for (const auto& [h, z] : level) {
            if (z == 0) continue;
            const Poly* rep = nullptr;
            long k = 0;
            for (const Poly& f : reps) {
                if (f.degree() != h.degree()) continue;
                if (auto s = shift_distance(f, h)) {
                    rep = &f;
                    k = *s;
                    break;
                }
            }
            if (!rep) throw ShiftCoprimalityViolated("base " + h.str() + " has no class representative");
            if (k < 0) throw ShiftCoprimalityViolated("representative " + rep->str() + " is not leftmost");
            kept[{d, *rep}] += z;
            if (k == 0) continue;
            Poly g(1);
            for (long i = 0; i < k; ++i) g *= rep->shift(i);
            const CycNum gd = g.eval(CycNum(delta));
            if (d == 1) {
                res.r *= RatFun(g.shift(1)).pow(z);
                res.c *= gd.pow(-z);
                continue;
            }
            geo.emplace_back(factored_prod(d - 1, delta, RatFun(gd)), -z);
            for (long i = 0; i < k; ++i) work[d - 1][rep->shift(i + 1)] += z;
        }
    }
    for (const auto& [key, z] : kept)
        if (z != 0) res.hyp.emplace_back(factored_prod(key.first, delta, RatFun(key.second)), z);
    ProdPowers geo1;
    for (const auto& [p, e] : geo) {
        SyncResult s = geometric_to_one(p, e);
        res.c *= s.c;
        geo1.insert(geo1.end(), s.factors.begin(), s.factors.end());
    }
    res.geo = normalize_geo(geo1);
    return res;
}

namespace {

unsigned field_of(const std::vector<NestedProd>& ps) {
    unsigned n = 1;
    for (const auto& p : ps)
        for (const auto& m : p.mults) n = common_conductor(n, m.conductor());
    return n;
}

struct Staged {
    CycNum c;
    ProdPowers geo, hyp;
};

Staged stage(const NestedProd& p, long delta, unsigned field) {
    SyncResult s = synchronize(factored_form(p, field), delta);
    Staged st{s.c, {}, {}};
    for (const auto& pe : s.factors) (is_geometric(pe.first) ? st.geo : st.hyp).push_back(pe);
    return st;
}

ProductSplit finish(Staged st, long delta, const std::vector<Poly>& reps) {
    Reduction r = shift_coprime_reduce(st.hyp, delta, reps);
    ProductSplit out;
    out.delta = delta;
    out.c = st.c * r.c;
    out.r = r.r;
    ProdPowers geo = st.geo;
    geo.insert(geo.end(), r.geo.begin(), r.geo.end());
    out.geo = normalize_geo(geo);
    out.hyp = r.hyp;
    return out;
}

}  // namespace

ProductSplit split(const NestedProd& p, long delta) {
    if (delta < 0) delta = max_lower(p);
    Staged st = stage(p, delta, field_of({p}));
    std::vector<Poly> bases;
    for (const auto& [q, e] : st.hyp) bases.push_back(base_of(q).num());
    return finish(std::move(st), delta, leftmost_representatives(bases));
}

std::vector<ProductSplit> split_all(const std::vector<NestedProd>& ps, long delta) {
    if (delta < 0) {
        delta = 0;
        for (const auto& p : ps) delta = std::max(delta, max_lower(p));
    }
    std::vector<Staged> st;
    std::vector<Poly> bases;
    const unsigned field = field_of(ps);
    for (const auto& p : ps) {
        st.push_back(stage(p, delta, field));
        for (const auto& [q, e] : st.back().hyp) bases.push_back(base_of(q).num());
    }
    const auto reps = leftmost_representatives(bases);
    std::vector<ProductSplit> out;
    for (auto& s : st) out.push_back(finish(std::move(s), delta, reps));
    return out;
}

CycNum eval_split(const ProductSplit& s, long n) {
    CycNum v = s.c * s.r.eval_at(n);
    for (const auto* list : {&s.geo, &s.hyp})
        for (const auto& [p, e] : *list) v *= eval_prod(p, n).pow(e);
    return v;
}

}  // namespace prodring
