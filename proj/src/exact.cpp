#include "prodring/exact.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "prodring/linalg.hpp"

namespace prodring {

unsigned long gcd_ul(unsigned long a, unsigned long b) {
    while (b) {
        unsigned long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

unsigned long lcm_ul(unsigned long a, unsigned long b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_ul(a, b) * b;
}

std::vector<std::pair<unsigned, unsigned>> factor_ul(unsigned long n) {
    std::vector<std::pair<unsigned, unsigned>> out;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(static_cast<unsigned>(p), e);
    }
    if (n > 1) out.emplace_back(static_cast<unsigned>(n), 1);
    return out;
}

unsigned euler_phi(unsigned n) {
    unsigned r = n;
    for (auto [p, e] : factor_ul(n)) r = r / p * (p - 1);
    return r;
}

std::vector<unsigned> divisors(unsigned n) {
    std::vector<unsigned> d;
    for (unsigned i = 1; i * i <= n; ++i) {
        if (n % i) continue;
        d.push_back(i);
        if (i * i != n) d.push_back(n / i);
    }
    std::sort(d.begin(), d.end());
    return d;
}

unsigned normalize_conductor(unsigned n) { return n % 4 == 2 ? n / 2 : n; }

bool is_squarefree(unsigned long d) {
    for (auto [p, e] : factor_ul(d))
        if (e > 1) return false;
    return true;
}

std::vector<BigInt> cyclotomic_poly(unsigned n) {
    static std::mutex mu;
    static std::map<unsigned, std::vector<BigInt>> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    std::vector<BigInt> num(n + 1, BigInt(0));
    num[0] = -1;
    num[n] = 1;
    for (unsigned d : divisors(n)) {
        if (d == n) continue;
        std::vector<BigInt> den = cyclotomic_poly(d);
        const std::size_t dd = den.size() - 1;
        std::vector<BigInt> q(num.size() - dd, BigInt(0));
        for (std::size_t i = num.size(); i-- > dd;) {
            BigInt c = num[i];
            q[i - dd] = c;
            if (c == 0) continue;
            for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
        }
        num = q;
    }
    std::lock_guard<std::mutex> lk(mu);
    cache.emplace(n, num);
    return num;
}

CycField::CycField(unsigned n) : n_(n), phi_(euler_phi(n)), minpoly_(cyclotomic_poly(n)) {
    std::vector<BigInt> cur(phi_, BigInt(0));
    cur[0] = 1;
    for (unsigned j = 0; j < n_; ++j) {
        std::vector<long> row(phi_);
        for (unsigned t = 0; t < phi_; ++t) {
            if (!cur[t].fits_slong_p()) throw Error("cyclotomic reduction table overflow");
            row[t] = cur[t].get_si();
        }
        powers_.push_back(std::move(row));
        std::vector<BigInt> nxt(phi_, BigInt(0));
        for (unsigned t = 0; t + 1 < phi_; ++t) nxt[t + 1] = cur[t];
        BigInt top = cur[phi_ - 1];
        for (unsigned t = 0; t < phi_; ++t) nxt[t] -= top * minpoly_[t];
        cur = std::move(nxt);
    }
    for (unsigned k = 1; k <= n_; ++k)
        if (gcd_ul(k, n_) == 1) units_.push_back(k % n_);
    std::sort(units_.begin(), units_.end());
}

const CycField& CycField::get(unsigned n) {
    static std::mutex mu;
    static std::map<unsigned, std::unique_ptr<CycField>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return *it->second;
    auto f = std::unique_ptr<CycField>(new CycField(n));
    auto& ref = *f;
    cache.emplace(n, std::move(f));
    return ref;
}

unsigned common_conductor(unsigned a, unsigned b) {
    return normalize_conductor(static_cast<unsigned>(lcm_ul(a, b)));
}

namespace {

void shrink(unsigned& n, std::vector<BigRat>& c) {
    if (n == 1) return;
    for (std::size_t j = 1; j < c.size(); ++j)
        if (c[j] != 0) return;
    n = 1;
    c.resize(1);
}

}  // namespace

CycNum::CycNum(unsigned n, std::vector<BigRat> coeffs) : n_(n), c_(std::move(coeffs)) {
    if (n_ == 0 || normalize_conductor(n_) != n_) throw Error("bad conductor " + std::to_string(n));
    if (c_.size() != CycField::get(n_).degree()) throw Error("coefficient vector has wrong length");
    for (auto& x : c_) x.canonicalize();
    shrink(n_, c_);
}

CycNum CycNum::zeta_pow(unsigned n, long k) {
    if (n == 0) throw Error("zeta(0)");
    long kk = ((k % static_cast<long>(n)) + n) % n;
    unsigned m = normalize_conductor(n);
    if (m != n) {
        // zeta_{2m}^k = (-1)^k zeta_m^{k (m+1)/2}
        long e = (kk * ((m + 1) / 2)) % m;
        CycNum z = zeta_pow(m, e);
        return (kk % 2) ? -z : z;
    }
    const CycField& f = CycField::get(n);
    std::vector<BigRat> c(f.degree());
    for (unsigned t = 0; t < f.degree(); ++t) c[t] = f.powers()[static_cast<std::size_t>(kk)][t];
    return CycNum(n, std::move(c));
}

CycNum CycNum::zeta(unsigned n) { return zeta_pow(n, 1); }

bool CycNum::is_zero() const { return n_ == 1 && c_[0] == 0; }
bool CycNum::is_one() const { return n_ == 1 && c_[0] == 1; }
bool CycNum::is_rational() const { return n_ == 1; }
BigRat CycNum::rational() const {
    if (n_ != 1) throw Error("not rational");
    return c_[0];
}

CycNum CycNum::lift_to(unsigned m_in) const {
    unsigned m = normalize_conductor(m_in);
    if (m % n_ != 0) throw NotASubfield(n_, m_in);
    if (m == n_) return *this;
    const CycField& f = CycField::get(m);
    std::vector<BigRat> out(f.degree(), BigRat(0));
    const unsigned step = m / n_;
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        const auto& row = f.powers()[(j * step) % m];
        for (unsigned t = 0; t < f.degree(); ++t)
            if (row[t]) out[t] += c_[j] * row[t];
    }
    CycNum r;
    r.n_ = m;
    r.c_ = std::move(out);
    return r;
}

CycNum CycNum::lowered() const {
    if (n_ == 1) return *this;
    const CycField& f = CycField::get(n_);
    for (unsigned m : divisors(n_)) {
        if (normalize_conductor(m) != m || m == n_) continue;
        bool fixed = true;
        for (unsigned k : f.units()) {
            if (k % m != 1 % m) continue;
            if (galois(k) != *this) {
                fixed = false;
                break;
            }
        }
        if (!fixed) continue;
        const CycField& g = CycField::get(m);
        QMatrix a(f.degree(), std::vector<BigRat>(g.degree(), BigRat(0)));
        for (unsigned j = 0; j < g.degree(); ++j) {
            const auto& row = f.powers()[(j * (n_ / m)) % n_];
            for (unsigned t = 0; t < f.degree(); ++t) a[t][j] = row[t];
        }
        auto x = solve_linear(a, c_);
        if (!x) continue;
        return CycNum(m, *x);
    }
    return *this;
}

CycNum CycNum::operator-() const {
    CycNum r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CycNum& CycNum::operator+=(const CycNum& b) {
    if (b.n_ == 1) {
        c_[0] += b.c_[0];
    } else {
        unsigned m = common_conductor(n_, b.n_);
        if (m != n_) *this = lift_to(m);
        const CycNum bl = b.n_ == m ? b : b.lift_to(m);
        for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += bl.c_[j];
    }
    shrink(n_, c_);
    return *this;
}

CycNum& CycNum::operator-=(const CycNum& b) { return *this += -b; }

CycNum& CycNum::operator*=(const CycNum& b) {
    if (b.n_ == 1) {
        for (auto& x : c_) x *= b.c_[0];
        shrink(n_, c_);
        return *this;
    }
    if (n_ == 1) {
        BigRat s = c_[0];
        *this = b;
        for (auto& x : c_) x *= s;
        shrink(n_, c_);
        return *this;
    }
    unsigned m = common_conductor(n_, b.n_);
    const CycNum a = n_ == m ? *this : lift_to(m);
    const CycNum bl = b.n_ == m ? b : b.lift_to(m);
    const CycField& f = CycField::get(m);
    const unsigned d = f.degree();
    std::vector<BigRat> conv(2 * d - 1, BigRat(0));
    for (unsigned i = 0; i < d; ++i) {
        if (a.c_[i] == 0) continue;
        for (unsigned j = 0; j < d; ++j)
            if (bl.c_[j] != 0) conv[i + j] += a.c_[i] * bl.c_[j];
    }
    std::vector<BigRat> out(conv.begin(), conv.begin() + d);
    for (unsigned j = d; j < conv.size(); ++j) {
        if (conv[j] == 0) continue;
        const auto& row = f.powers()[j % m];
        for (unsigned t = 0; t < d; ++t)
            if (row[t]) out[t] += conv[j] * row[t];
    }
    n_ = m;
    c_ = std::move(out);
    shrink(n_, c_);
    return *this;
}

CycNum& CycNum::operator/=(const CycNum& b) { return *this *= b.inverse(); }

bool operator==(const CycNum& a, const CycNum& b) {
    if (a.n_ == b.n_) return a.c_ == b.c_;
    unsigned m = common_conductor(a.n_, b.n_);
    return a.lift_to(m).c_ == b.lift_to(m).c_;
}

bool operator<(const CycNum& a, const CycNum& b) {
    if (a.n_ == b.n_) return a.c_ < b.c_;
    unsigned m = common_conductor(a.n_, b.n_);
    return a.lift_to(m).c_ < b.lift_to(m).c_;
}

CycNum CycNum::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (n_ == 1) return CycNum(BigRat(1 / c_[0]));
    const CycField& f = CycField::get(n_);
    const unsigned d = f.degree();
    QMatrix a(d, std::vector<BigRat>(d, BigRat(0)));
    for (unsigned j = 0; j < d; ++j) {
        CycNum col = *this * zeta_pow(n_, j);
        const CycNum cl = col.lift_to(n_);
        for (unsigned t = 0; t < d; ++t) a[t][j] = cl.c_[t];
    }
    std::vector<BigRat> rhs(d, BigRat(0));
    rhs[0] = 1;
    auto x = solve_linear(a, rhs);
    if (!x) throw DivisionByZero();
    return CycNum(n_, *x);
}

CycNum CycNum::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycNum base = *this, r(1);
    while (e) {
        if (e & 1) r *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return r;
}

CycNum CycNum::galois(unsigned k) const {
    if (n_ == 1) return *this;
    if (gcd_ul(k % n_, n_) != 1 && n_ > 1) throw Error("galois index not coprime to conductor");
    const CycField& f = CycField::get(n_);
    std::vector<BigRat> out(f.degree(), BigRat(0));
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        const auto& row = f.powers()[(j * k) % n_];
        for (unsigned t = 0; t < f.degree(); ++t)
            if (row[t]) out[t] += c_[j] * row[t];
    }
    return CycNum(n_, std::move(out));
}

Complex CycNum::embed(mpfr_prec_t prec, unsigned k) const {
    const mpfr_prec_t wp = prec + 32;
    Real re(wp), im(wp);
    if (n_ == 1) {
        re = Real(c_[0], wp);
    } else {
        Real twopi = Real::pi(wp).mul_2si(1);
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            unsigned long e = (j * k) % n_;
            Real ang = twopi * Real(static_cast<long>(e), wp) / Real(static_cast<long>(n_), wp);
            Real cj(c_[j], wp);
            re += cj * ang.cos();
            im += cj * ang.sin();
        }
    }
    Complex out(prec);
    mpfr_set(out.re.raw(), re.raw(), MPFR_RNDN);
    mpfr_set(out.im.raw(), im.raw(), MPFR_RNDN);
    return out;
}

std::vector<Complex> CycNum::conjugates(mpfr_prec_t prec) const {
    std::vector<Complex> out;
    if (n_ == 1) {
        out.push_back(embed(prec));
        return out;
    }
    for (unsigned k : CycField::get(n_).units()) out.push_back(embed(prec, k));
    return out;
}

unsigned order_of(const CycNum& a) {
    if (a.is_zero()) throw ZeroElement();
    const unsigned t = static_cast<unsigned>(lcm_ul(2, a.conductor()));
    if (!a.pow(t).is_one()) return 0;
    for (unsigned d : divisors(t))
        if (a.pow(d).is_one()) return d;
    return t;
}

CycNum sqrt_embed(long d) {
    if (d < 2 || !is_squarefree(static_cast<unsigned long>(d))) throw NotSquarefree(d);
    CycNum r(1);
    for (auto [p, e] : factor_ul(static_cast<unsigned long>(d))) {
        if (p == 2) {
            r *= CycNum::zeta_pow(8, 1) + CycNum::zeta_pow(8, -1);
            continue;
        }
        CycNum g(0);
        for (unsigned a = 1; a < p; ++a) {
            mpz_class aa(a), pp(p);
            int leg = mpz_legendre(aa.get_mpz_t(), pp.get_mpz_t());
            CycNum z = CycNum::zeta_pow(p, a);
            if (leg > 0) g += z;
            else g -= z;
        }
        if (p % 4 == 1) r *= g;
        else r *= -(CycNum::zeta(4) * g);
    }
    if (r.embed(64).re.sign() < 0) r = -r;
    return r;
}

namespace {

struct NiceBasis {
    bool ok = false;
    std::vector<std::string> names;
    QMatrix inverse;  // coordinates = inverse * power-basis coefficients
};

const NiceBasis& nice_basis(unsigned n) {
    static std::mutex mu;
    static std::map<unsigned, NiceBasis> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    NiceBasis nb;
    struct Gen {
        std::string kind;
        long d;
        CycNum v;
    };
    std::vector<Gen> gens;
    if (n % 4 == 0) gens.push_back({"i", 0, CycNum::zeta(4)});
    for (auto [p, e] : factor_ul(n)) {
        if (p == 2) {
            if (n % 8 == 0) gens.push_back({"s", 2, sqrt_embed(2)});
        } else if (p % 4 == 1 || n % 4 == 0) {
            gens.push_back({"s", static_cast<long>(p), sqrt_embed(p)});
        }
    }
    const unsigned d = euler_phi(n);
    if ((1u << gens.size()) == d && !gens.empty()) {
        QMatrix m(d, std::vector<BigRat>(d, BigRat(0)));
        for (unsigned mask = 0; mask < d; ++mask) {
            CycNum v(1);
            bool has_i = false;
            long rad = 1;
            for (std::size_t g = 0; g < gens.size(); ++g) {
                if (!(mask & (1u << g))) continue;
                v *= gens[g].v;
                if (gens[g].kind == "i") has_i = true;
                else rad *= gens[g].d;
            }
            v = v.lift_to(n);
            for (unsigned t = 0; t < d; ++t) m[t][mask] = v.coeffs()[t];
            std::string name;
            if (has_i) name = "zeta(4)";
            if (rad > 1) name += (name.empty() ? "" : "*") + std::string("sqrt(") + std::to_string(rad) + ")";
            nb.names.push_back(name);
        }
        auto inv = invert(m);
        if (inv) {
            nb.ok = true;
            nb.inverse = *inv;
        }
    }
    return cache.emplace(n, std::move(nb)).first->second;
}

std::string rat_str(const BigRat& q) { return q.get_str(); }

void append_term(std::ostringstream& os, bool& first, const BigRat& c, const std::string& name) {
    if (c == 0) return;
    BigRat a = abs(c);
    if (first) {
        if (c < 0) os << "-";
    } else {
        os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (name.empty()) {
        os << rat_str(a);
    } else if (a == 1) {
        os << name;
    } else {
        os << rat_str(a) << "*" << name;
    }
}

}  // namespace

std::string CycNum::str() const {
    if (n_ == 1) return rat_str(c_[0]);
    const CycNum low = lowered();
    if (low.n_ != n_ && (low.n_ == 1 || nice_basis(low.n_).ok || !nice_basis(n_).ok)) return low.str();
    std::ostringstream os;
    bool first = true;
    const NiceBasis& nb = nice_basis(n_);
    if (nb.ok) {
        for (std::size_t i = 0; i < nb.names.size(); ++i) {
            BigRat coord = 0;
            for (std::size_t t = 0; t < c_.size(); ++t) coord += nb.inverse[i][t] * c_[t];
            append_term(os, first, coord, nb.names[i]);
        }
    } else {
        for (std::size_t j = 0; j < c_.size(); ++j) {
            std::string name;
            if (j == 1) name = "zeta(" + std::to_string(n_) + ")";
            else if (j > 1) name = "zeta(" + std::to_string(n_) + ")^" + std::to_string(j);
            append_term(os, first, c_[j], name);
        }
    }
    if (first) return "0";
    return os.str();
}

}  // namespace prodring
