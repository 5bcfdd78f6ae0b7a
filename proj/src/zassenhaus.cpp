#include <algorithm>
#include <cstdint>
#include <random>

#include "prodring/poly.hpp"

namespace prodring {

namespace {

using u64 = std::uint64_t;
using ZPoly = std::vector<BigInt>;
using MP = std::vector<u64>;

void ztrim(ZPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

void mtrim(MP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

u64 mulm(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }

u64 powm(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulm(r, a, p);
        a = mulm(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invm(u64 a, u64 p) { return powm(a, p - 2, p); }

MP reduce_mod(const ZPoly& f, u64 p) {
    MP r(f.size());
    mpz_class pp(static_cast<unsigned long>(p)), t;
    for (std::size_t i = 0; i < f.size(); ++i) {
        mpz_fdiv_r(t.get_mpz_t(), f[i].get_mpz_t(), pp.get_mpz_t());
        r[i] = t.get_ui();
    }
    mtrim(r);
    return r;
}

MP msub(const MP& a, const MP& b, u64 p) {
    MP r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
    mtrim(r);
    return r;
}

MP mmul(const MP& a, const MP& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    MP r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulm(a[i], b[j], p)) % p;
    }
    mtrim(r);
    return r;
}

void mdivrem(const MP& a, const MP& b, u64 p, MP& q, MP& r) {
    r = a;
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    const u64 inv = invm(b.back(), p);
    while (r.size() >= b.size() && !r.empty()) {
        const std::size_t sh = r.size() - b.size();
        const u64 c = mulm(r.back(), inv, p);
        q[sh] = c;
        for (std::size_t j = 0; j < b.size(); ++j) r[sh + j] = (r[sh + j] + p - mulm(c, b[j], p)) % p;
        mtrim(r);
    }
    mtrim(q);
}

MP mrem(const MP& a, const MP& b, u64 p) {
    MP q, r;
    mdivrem(a, b, p, q, r);
    return r;
}

MP mmonic(MP a, u64 p) {
    if (a.empty()) return a;
    const u64 inv = invm(a.back(), p);
    for (auto& c : a) c = mulm(c, inv, p);
    return a;
}

MP mgcd(MP a, MP b, u64 p) {
    while (!b.empty()) {
        MP r = mrem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return mmonic(a, p);
}

MP mderiv(const MP& a, u64 p) {
    MP r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(mulm(a[i], i % p, p));
    mtrim(r);
    return r;
}

MP mpowmod(MP base, const mpz_class& e, const MP& m, u64 p) {
    MP r{1};
    base = mrem(base, m, p);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        r = mrem(mmul(r, r, p), m, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mrem(mmul(r, base, p), m, p);
    }
    return r;
}

// Extended Euclid mod p: s*a + t*b = 1.
void mxgcd(const MP& a, const MP& b, u64 p, MP& s, MP& t) {
    MP r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        MP q, r;
        mdivrem(r0, r1, p, q, r);
        MP s2 = msub(s0, mmul(q, s1, p), p);
        MP t2 = msub(t0, mmul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    const u64 inv = invm(r0.back(), p);
    s = s0;
    t = t0;
    for (auto& c : s) c = mulm(c, inv, p);
    for (auto& c : t) c = mulm(c, inv, p);
}

std::vector<std::pair<MP, int>> distinct_degree(MP f, u64 p) {
    std::vector<std::pair<MP, int>> out;
    MP h{0, 1};
    const MP x{0, 1};
    mpz_class pe(static_cast<unsigned long>(p));
    for (int d = 1; 2 * d <= static_cast<int>(f.size()) - 1; ++d) {
        h = mpowmod(h, pe, f, p);
        MP g = mgcd(f, msub(h, x, p), p);
        if (g.size() > 1) {
            out.emplace_back(g, d);
            MP q, r;
            mdivrem(f, g, p, q, r);
            f = q;
            h = mrem(h, f, p);
        }
    }
    if (f.size() > 1) out.emplace_back(mmonic(f, p), static_cast<int>(f.size()) - 1);
    return out;
}

void equal_degree(const MP& f, int d, u64 p, std::mt19937_64& rng, std::vector<MP>& out) {
    const int n = static_cast<int>(f.size()) - 1;
    if (n == d) {
        out.push_back(f);
        return;
    }
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    while (true) {
        MP a(static_cast<std::size_t>(n));
        for (auto& c : a) c = rng() % p;
        mtrim(a);
        if (a.size() < 2) continue;
        MP b = msub(mpowmod(a, e, f, p), MP{1}, p);
        MP g = mgcd(f, b, p);
        if (g.size() > 1 && g.size() < f.size()) {
            MP q, r;
            mdivrem(f, g, p, q, r);
            equal_degree(g, d, p, rng, out);
            equal_degree(mmonic(q, p), d, p, rng, out);
            return;
        }
    }
}

std::vector<MP> factor_mod(const MP& f, u64 p) {
    std::mt19937_64 rng(0x5eedULL + p);
    std::vector<MP> out;
    for (auto& [g, d] : distinct_degree(mmonic(f, p), p)) equal_degree(g, d, p, rng, out);
    return out;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    ztrim(r);
    return r;
}

ZPoly zmod(ZPoly a, const BigInt& m) {
    for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    ztrim(a);
    return a;
}

ZPoly zsym(ZPoly a, const BigInt& m) {
    const BigInt half = m / 2;
    for (auto& c : a) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        if (c > half) c -= m;
    }
    ztrim(a);
    return a;
}

ZPoly from_mp(const MP& a) {
    ZPoly r;
    for (u64 c : a) r.emplace_back(static_cast<unsigned long>(c));
    return r;
}

BigInt zcontent(const ZPoly& f) {
    BigInt g = 0;
    for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly zprimitive(ZPoly f) {
    BigInt g = zcontent(f);
    if (g == 0) return f;
    if (f.back() < 0) g = -g;
    for (auto& c : f) c /= g;
    return f;
}

// Exact division over Z; returns false if b does not divide a.
bool zdivides(ZPoly a, const ZPoly& b, ZPoly& q) {
    if (b.empty()) return false;
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, BigInt(0));
    while (a.size() >= b.size() && !a.empty()) {
        if (!mpz_divisible_p(a.back().get_mpz_t(), b.back().get_mpz_t())) return false;
        BigInt c = a.back() / b.back();
        const std::size_t sh = a.size() - b.size();
        q[sh] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[sh + j] -= c * b[j];
        ztrim(a);
    }
    ztrim(q);
    return a.empty();
}

// Lifts f = g*h mod p (g monic) to f = G*H mod p^k.
void hensel_lift(const ZPoly& f, const MP& g, const MP& h, u64 p, unsigned k, ZPoly& G, ZPoly& H) {
    MP s, t;
    mxgcd(g, h, p, s, t);
    G = from_mp(g);
    H = from_mp(h);
    BigInt pj(static_cast<unsigned long>(p));
    const BigInt pb(static_cast<unsigned long>(p));
    for (unsigned j = 1; j < k; ++j) {
        ZPoly e = f;
        ZPoly gh = zmul(G, H);
        e.resize(std::max(e.size(), gh.size()), BigInt(0));
        for (std::size_t i = 0; i < gh.size(); ++i) e[i] -= gh[i];
        for (auto& c : e) c /= pj;
        ztrim(e);
        MP c = reduce_mod(e, p);
        if (!c.empty()) {
            MP a = mrem(mmul(t, c, p), g, p);
            MP qb, rb;
            mdivrem(msub(c, mmul(a, h, p), p), g, p, qb, rb);
            ZPoly A = from_mp(a), B = from_mp(qb);
            G.resize(std::max(G.size(), A.size()), BigInt(0));
            H.resize(std::max(H.size(), B.size()), BigInt(0));
            for (std::size_t i = 0; i < A.size(); ++i) G[i] += pj * A[i];
            for (std::size_t i = 0; i < B.size(); ++i) H[i] += pj * B[i];
            ztrim(G);
            ztrim(H);
        }
        pj *= pb;
    }
}

}  // namespace

std::vector<ZPoly> factor_squarefree_integer(const ZPoly& f_in) {
    ZPoly f = zprimitive(f_in);
    ztrim(f);
    if (f.size() <= 2) return {f};
    const int n = static_cast<int>(f.size()) - 1;

    u64 best_p = 0;
    std::vector<MP> best;
    int tried = 0;
    for (u64 p = 3; tried < 4 && p < 100000; p += 2) {
        if (!is_prime(p)) continue;
        MP fp = reduce_mod(f, p);
        if (static_cast<int>(fp.size()) - 1 != n) continue;
        if (mgcd(fp, mderiv(fp, p), p).size() != 1) continue;
        auto fac = factor_mod(fp, p);
        ++tried;
        if (best_p == 0 || fac.size() < best.size()) {
            best_p = p;
            best = std::move(fac);
        }
        if (best.size() == 1) break;
    }
    if (best_p == 0) throw Error("no suitable prime for factorization");
    if (best.size() == 1) return {f};

    const u64 p = best_p;
    BigInt maxc = 0;
    for (const auto& c : f) maxc = std::max(maxc, BigInt(abs(c)));
    BigInt bound = abs(f.back()) * maxc * (n + 1);
    bound <<= static_cast<unsigned long>(n + 1);
    unsigned k = 1;
    BigInt pk(static_cast<unsigned long>(p));
    while (pk <= bound) {
        pk *= static_cast<unsigned long>(p);
        ++k;
    }

    std::vector<ZPoly> lifted;
    ZPoly rest = f;
    const BigInt lc = f.back();
    for (std::size_t i = 0; i + 1 < best.size(); ++i) {
        MP others{1};
        for (std::size_t j = i + 1; j < best.size(); ++j) others = mmul(others, best[j], p);
        MP restp = reduce_mod(rest, p);
        others = mmul(others, MP{restp.back()}, p);
        ZPoly G, H;
        hensel_lift(rest, best[i], others, p, k, G, H);
        lifted.push_back(zmod(G, pk));
        rest = zmod(H, pk);
    }
    {
        ZPoly last = rest;
        BigInt inv;
        BigInt lcr = last.back();
        mpz_invert(inv.get_mpz_t(), lcr.get_mpz_t(), pk.get_mpz_t());
        for (auto& c : last) c *= inv;
        lifted.push_back(zmod(last, pk));
    }

    std::vector<ZPoly> result;
    ZPoly F = f;
    std::size_t s = 1;
    while (2 * s <= lifted.size()) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            ZPoly g{F.back()};
            for (std::size_t i : idx) g = zmod(zmul(g, lifted[i]), pk);
            g = zprimitive(zsym(g, pk));
            ZPoly q;
            if (g.size() > 1 && zdivides(F, g, q)) {
                result.push_back(g);
                F = q;
                std::vector<ZPoly> remaining;
                for (std::size_t i = 0, t = 0; i < lifted.size(); ++i) {
                    if (t < s && idx[t] == i) {
                        ++t;
                        continue;
                    }
                    remaining.push_back(lifted[i]);
                }
                lifted = std::move(remaining);
                found = true;
                break;
            }
            std::size_t pos = s;
            while (pos > 0 && idx[pos - 1] == lifted.size() - s + pos - 1) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::size_t i = pos; i < s; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!found) ++s;
    }
    F = zprimitive(F);
    if (F.size() > 1) result.push_back(F);
    return result;
}

}  // namespace prodring
