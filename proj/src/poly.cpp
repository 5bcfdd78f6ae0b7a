#include "prodring/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace prodring {

Poly::Poly(std::vector<CycNum> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::x() { return Poly(std::vector<CycNum>{CycNum(0), CycNum(1)}); }

Poly Poly::linear(const CycNum& c) { return Poly(std::vector<CycNum>{c, CycNum(1)}); }

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const CycNum& Poly::lc() const {
    if (c_.empty()) throw ZeroPolynomial();
    return c_.back();
}

unsigned Poly::conductor() const {
    unsigned n = 1;
    for (const auto& c : c_) n = common_conductor(n, c.conductor());
    return n;
}

bool Poly::is_rational() const {
    return std::all_of(c_.begin(), c_.end(), [](const CycNum& c) { return c.is_rational(); });
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& b) {
    if (c_.size() < b.c_.size()) c_.resize(b.c_.size(), CycNum(0));
    for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] += b.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& b) {
    if (c_.size() < b.c_.size()) c_.resize(b.c_.size(), CycNum(0));
    for (std::size_t i = 0; i < b.c_.size(); ++i) c_[i] -= b.c_[i];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<CycNum> r(a.c_.size() + b.c_.size() - 1, CycNum(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            if (!b.c_[j].is_zero()) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
}

Poly& Poly::operator*=(const Poly& b) { return *this = *this * b; }

Poly operator*(Poly a, const CycNum& s) {
    for (auto& c : a.c_) c *= s;
    a.trim();
    return a;
}

bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

bool operator<(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = a.c_.size(); i-- > 0;) {
        if (a.c_[i] == b.c_[i]) continue;
        return a.c_[i] < b.c_[i];
    }
    return false;
}

Poly Poly::pow(unsigned e) const {
    Poly r(1), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * lc().inverse();
}

Poly Poly::derivative() const {
    std::vector<CycNum> r;
    for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * CycNum(static_cast<long>(i)));
    return Poly(std::move(r));
}

CycNum Poly::eval(const CycNum& v) const {
    CycNum r(0);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * v + c_[i];
    return r;
}

Poly Poly::shift(const CycNum& k) const {
    if (k.is_zero() || c_.size() <= 1) return *this;
    Poly r;
    const Poly lin = linear(k);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * lin + Poly(c_[i]);
    return r;
}

Poly Poly::galois(unsigned k) const {
    std::vector<CycNum> r;
    for (const auto& c : c_) r.push_back(c.galois(k));
    return Poly(std::move(r));
}

namespace {

bool is_sum_string(const std::string& s) {
    int depth = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '(') ++depth;
        else if (ch == ')') --depth;
        else if (depth == 0 && (ch == '+' || ch == '-') && s[i - 1] == ' ') return true;
    }
    return false;
}

}  // namespace

std::string Poly::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const CycNum& c = c_[i];
        if (c.is_zero()) continue;
        std::string mono;
        if (i == 1) mono = var;
        else if (i > 1) mono = var + "^" + std::to_string(i);
        std::string cs = c.str();
        bool neg = false;
        if (is_sum_string(cs)) {
            cs = "(" + cs + ")";
        } else if (cs[0] == '-') {
            neg = true;
            cs = cs.substr(1);
        }
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        first = false;
        if (mono.empty()) os << cs;
        else if (cs == "1") os << mono;
        else os << cs << "*" << mono;
    }
    return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DivisionByZero();
    std::vector<CycNum> r = a.coeffs();
    const int db = b.degree();
    std::vector<CycNum> q(a.degree() >= db ? static_cast<std::size_t>(a.degree() - db + 1) : 0, CycNum(0));
    const CycNum inv = b.lc().inverse();
    for (int i = a.degree(); i >= db; --i) {
        if (r[i].is_zero()) continue;
        CycNum c = r[i] * inv;
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b.coeffs()[j];
    }
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly gcd(const Poly& a0, const Poly& b0) {
    Poly a = a0, b = b0;
    while (!b.is_zero()) {
        Poly r = (a % b).monic();
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

CycNum resultant(const Poly& a0, const Poly& b0) {
    if (a0.is_zero() || b0.is_zero()) return CycNum(0);
    Poly a = a0, b = b0;
    CycNum acc(1);
    while (true) {
        const int da = a.degree(), db = b.degree();
        if (db == 0) return acc * b.lc().pow(da);
        if (da == 0) return acc * a.lc().pow(db);
        if (da < db) {
            if ((da * db) % 2) acc = -acc;
            std::swap(a, b);
            continue;
        }
        // res(a, b) = (-1)^{da db} res(b, a); res(b, a) = lc(b)^{da - dr} res(b, r)
        Poly r = a % b;
        if (r.is_zero()) return CycNum(0);
        if ((da * db) % 2) acc = -acc;
        acc *= b.lc().pow(da - r.degree());
        a = std::move(b);
        b = std::move(r);
    }
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f0) {
    std::vector<std::pair<Poly, int>> out;
    Poly f = f0.monic();
    if (f.degree() <= 0) return out;
    Poly fp = f.derivative();
    Poly a = gcd(f, fp);
    Poly b = f / a;
    Poly d = fp / a - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        Poly g = gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g, i);
        b = b / g;
        d = d / g - b.derivative();
        ++i;
    }
    return out;
}

namespace {

using ZPoly = std::vector<BigInt>;

// Rational polynomial -> primitive integer polynomial with positive leading coefficient.
ZPoly to_integer(const Poly& f) {
    BigInt l = 1;
    for (const auto& c : f.coeffs()) {
        BigInt d = c.rational().get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    ZPoly r;
    for (const auto& c : f.coeffs()) {
        BigRat v = c.rational() * l;
        r.push_back(v.get_num());
    }
    BigInt g = 0;
    for (const auto& c : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (r.back() < 0) g = -g;
    for (auto& c : r) c /= g;
    return r;
}

Poly from_integer(const ZPoly& f) {
    std::vector<CycNum> c;
    for (const auto& v : f) c.emplace_back(v);
    return Poly(std::move(c));
}

std::vector<Poly> factor_squarefree_rational(const Poly& f) {
    std::vector<Poly> out;
    for (const auto& g : factor_squarefree_integer(to_integer(f))) out.push_back(from_integer(g).monic());
    return out;
}

Poly rational_norm(const Poly& g, unsigned n) {
    Poly r(1);
    for (unsigned k : CycField::get(n).units()) r *= g.galois(k);
    for (const auto& c : r.coeffs())
        if (!c.is_rational()) throw Error("norm is not rational");
    return r;
}

std::vector<Poly> trager(const Poly& f, unsigned n) {
    const CycNum zeta = CycNum::zeta(n);
    for (long t = 0; t < 200; ++t) {
        const long s = (t % 2 ? 1 : -1) * ((t + 1) / 2);
        if (s == 0 && f.is_rational()) continue;
        const CycNum shift = zeta * CycNum(s);
        Poly g = f.shift(-shift);
        Poly nm = rational_norm(g, n);
        if (gcd(nm, nm.derivative()).degree() > 0) continue;
        auto parts = factor_squarefree_rational(nm.monic());
        if (parts.size() == 1) return {f};
        std::vector<Poly> out;
        for (const auto& part : parts) {
            Poly h = gcd(g, part);
            if (h.degree() > 0) out.push_back(h.shift(shift));
        }
        return out;
    }
    throw Error("no squarefree norm found");
}

// Irreducible factors over Q(zeta_n) of a monic squarefree polynomial.
std::vector<Poly> factor_over_field(const Poly& f, unsigned n) {
    if (f.degree() <= 1) return {f};
    if (n == 1) return factor_squarefree_rational(f);
    if (f.is_rational()) {
        std::vector<Poly> out;
        for (const auto& g : factor_squarefree_rational(f)) {
            if (g.degree() <= 1) {
                out.push_back(g);
                continue;
            }
            auto sub = trager(g, n);
            out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
    }
    return trager(f, n);
}

}  // namespace

Factorization factor_poly(const Poly& f, unsigned field) {
    if (f.is_zero()) throw ZeroPolynomial();
    Factorization out;
    out.content = f.lc();
    const unsigned n = common_conductor(normalize_conductor(field), f.conductor());
    std::map<Poly, int> acc;
    for (const auto& [g, e] : squarefree_decomposition(f))
        for (const auto& h : factor_over_field(g, n)) acc[h] += e;
    for (const auto& [h, e] : acc)
        if (e != 0) out.factors.emplace_back(h, e);
    return out;
}

Factorization factorize(const RatFun& f, unsigned field) {
    if (f.is_zero()) throw ZeroPolynomial();
    const unsigned n = common_conductor(f.conductor(), std::max(field, 1u));
    Factorization num = factor_poly(f.num(), n);
    Factorization den = factor_poly(f.den(), n);
    std::map<Poly, int> acc;
    for (const auto& [h, e] : num.factors) acc[h] += e;
    for (const auto& [h, e] : den.factors) acc[h] -= e;
    Factorization out;
    out.content = num.content / den.content;
    for (const auto& [h, e] : acc)
        if (e != 0) out.factors.emplace_back(h, e);
    return out;
}

Poly resultant_shift(const Poly& f, const Poly& h) {
    if (f.is_zero() || h.is_zero()) throw ZeroPolynomial();
    const int d = std::max(f.degree() * h.degree(), 0);
    std::vector<CycNum> a;
    for (int z = 0; z <= d; ++z) a.push_back(resultant(f, h.shift(static_cast<long>(z))));
    for (int j = 1; j <= d; ++j)
        for (int i = d; i >= j; --i) a[i] = (a[i] - a[i - 1]) / CycNum(static_cast<long>(j));
    Poly p(a[d]);
    for (int i = d - 1; i >= 0; --i) p = p * Poly::linear(CycNum(static_cast<long>(-i))) + Poly(a[i]);
    return p;
}

std::vector<long> integer_roots(const Poly& p) {
    if (p.is_zero()) throw ZeroPolynomial();
    if (p.degree() == 0) return {};
    const unsigned m = p.conductor();
    const unsigned phi = CycField::get(m).degree();
    Poly comp;
    for (unsigned j = 0; j < phi; ++j) {
        std::vector<CycNum> cs;
        for (const auto& c : p.coeffs()) cs.emplace_back(c.lift_to(m).coeffs()[j]);
        Poly q(std::move(cs));
        if (!q.is_zero() && (comp.is_zero() || q.degree() < comp.degree())) comp = q;
    }
    std::vector<long> cand;
    std::size_t low = 0;
    while (comp.coeffs()[low].is_zero()) ++low;
    if (low > 0) {
        cand.push_back(0);
        comp = Poly(std::vector<CycNum>(comp.coeffs().begin() + static_cast<std::ptrdiff_t>(low), comp.coeffs().end()));
    }
    if (comp.degree() >= 1) {
        Poly sq = comp.monic() / gcd(comp, comp.derivative());
        for (const auto& g : factor_squarefree_integer(to_integer(sq))) {
            if (g.size() != 2) continue;
            if (!mpz_divisible_p(g[0].get_mpz_t(), g[1].get_mpz_t())) continue;
            BigInt r = -g[0] / g[1];
            if (r.fits_slong_p()) cand.push_back(r.get_si());
        }
    }
    std::vector<long> out;
    for (long k : cand)
        if (p.eval(CycNum(k)).is_zero()) out.push_back(k);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

long z_function(const Poly& p) {
    long best = -1;
    for (long k : integer_roots(p)) best = std::max(best, k);
    return best + 1;
}

std::optional<long> shift_distance(const Poly& f, const Poly& h) {
    const int d = f.degree();
    if (d != h.degree() || d < 1) return std::nullopt;
    CycNum k = (h.coeff(d - 1) / h.lc() - f.coeff(d - 1) / f.lc()) / CycNum(static_cast<long>(d));
    if (!k.is_rational()) return std::nullopt;
    BigRat kr = k.rational();
    if (kr.get_den() != 1 || !kr.get_num().fits_slong_p()) return std::nullopt;
    const long kk = kr.get_num().get_si();
    if (f.shift(kk).monic() != h.monic()) return std::nullopt;
    return kk;
}

RatFun::RatFun(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw DivisionByZero();
    if (num.is_zero()) {
        num_ = Poly();
        den_ = Poly(1);
        return;
    }
    if (den.degree() == 0) {
        num_ = num * den.lc().inverse();
        den_ = Poly(1);
        return;
    }
    Poly g = gcd(num, den);
    Poly n = num, d = den;
    if (g.degree() > 0) {
        n = num / g;
        d = den / g;
    }
    CycNum inv = d.lc().inverse();
    num_ = n * inv;
    den_ = d * inv;
}

unsigned RatFun::conductor() const { return common_conductor(num_.conductor(), den_.conductor()); }

RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return RatFun();
    if (a.den_.degree() == 0 && b.den_.degree() == 0) return RatFun(a.num_ * b.num_, Poly(1), true);
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inverse(); }

RatFun RatFun::inverse() const {
    if (is_zero()) throw DivisionByZero();
    return RatFun(den_, num_);
}

RatFun RatFun::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    return RatFun(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), true);
}

CycNum RatFun::eval_at(long n) const {
    CycNum d = den_.eval(CycNum(n));
    if (d.is_zero()) return CycNum(0);
    return num_.eval(CycNum(n)) / d;
}

namespace {

bool needs_parens(const std::string& s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '(') ++depth;
        else if (ch == ')') --depth;
        else if (depth == 0 && (ch == '+' || ch == '*' || ch == '/' || (ch == '-' && i > 0))) return true;
    }
    return false;
}

bool is_rational_poly(const Poly& p) { return p.is_rational(); }

}  // namespace

std::string RatFun::str(const std::string& var) const {
    if (den_.degree() == 0) return num_.str(var);
    Poly n = num_, d = den_;
    if (is_rational_poly(n) && is_rational_poly(d)) {
        BigInt l = 1;
        for (const Poly* q : {&n, &d})
            for (const auto& c : q->coeffs()) {
                BigInt den = c.rational().get_den();
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
            }
        BigInt g = 0;
        for (const Poly* q : {&n, &d})
            for (const auto& c : q->coeffs()) {
                BigInt v = BigRat(c.rational() * l).get_num();
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            }
        CycNum scale(BigRat(l, g));
        n = n * scale;
        d = d * scale;
    }
    std::string ns = n.str(var), ds = d.str(var);
    if (needs_parens(ns)) ns = "(" + ns + ")";
    return ns + "/(" + ds + ")";
}

}  // namespace prodring
