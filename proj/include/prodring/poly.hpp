#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prodring/exact.hpp"

namespace prodring {

class Poly {
public:
    Poly() = default;
    Poly(const CycNum& c) { if (!c.is_zero()) c_.push_back(c); }
    Poly(long c) : Poly(CycNum(c)) {}
    explicit Poly(std::vector<CycNum> coeffs);
    static Poly x();
    // x + c
    static Poly linear(const CycNum& c);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<CycNum>& coeffs() const { return c_; }
    CycNum coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : CycNum(0); }
    const CycNum& lc() const;
    unsigned conductor() const;
    bool is_rational() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& b);
    Poly& operator-=(const Poly& b);
    Poly& operator*=(const Poly& b);
    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const CycNum& s);
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    // Canonical order: degree, then coefficients from the highest degree down.
    friend bool operator<(const Poly& a, const Poly& b);

    Poly pow(unsigned e) const;
    Poly monic() const;
    Poly derivative() const;
    CycNum eval(const CycNum& v) const;
    // f(x + k)
    Poly shift(const CycNum& k) const;
    Poly shift(long k) const { return shift(CycNum(k)); }
    Poly galois(unsigned k) const;

    std::string str(const std::string& var = "x") const;

private:
    void trim();
    std::vector<CycNum> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);  // exact quotient part of divmod
Poly operator%(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);      // monic, gcd(0,0) = 0
CycNum resultant(const Poly& a, const Poly& b);

// Squarefree decomposition of a monic polynomial: list of (squarefree monic, multiplicity).
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& f);

struct Factorization {
    CycNum content;
    std::vector<std::pair<Poly, int>> factors;
};

// Complete factorization over Q(zeta_N), N = conductor of the coefficients (or `field`).
Factorization factor_poly(const Poly& f, unsigned field = 1);

// Irreducible factors over Q of a primitive squarefree integer polynomial (Zassenhaus).
std::vector<std::vector<BigInt>> factor_squarefree_integer(const std::vector<BigInt>& f);

// p(z) = res_x(f(x), h(x + z)).
Poly resultant_shift(const Poly& f, const Poly& h);
std::vector<long> integer_roots(const Poly& p);
long z_function(const Poly& p);

// Some k with h(x) = f(x + k), if f and h are shift-equivalent monic polynomials.
std::optional<long> shift_distance(const Poly& f, const Poly& h);

class RatFun {
public:
    RatFun() : num_(), den_(1) {}
    RatFun(const CycNum& c) : num_(c), den_(1) {}
    RatFun(long c) : RatFun(CycNum(c)) {}
    RatFun(const Poly& p) : num_(p), den_(1) {}
    RatFun(const Poly& num, const Poly& den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.degree() == 0 && num_ == Poly(1); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    CycNum constant() const { return num_.coeff(0); }
    unsigned conductor() const;

    RatFun operator-() const { return RatFun(-num_, den_, true); }
    friend RatFun operator+(const RatFun& a, const RatFun& b);
    friend RatFun operator-(const RatFun& a, const RatFun& b);
    friend RatFun operator*(const RatFun& a, const RatFun& b);
    friend RatFun operator/(const RatFun& a, const RatFun& b);
    RatFun& operator+=(const RatFun& b) { return *this = *this + b; }
    RatFun& operator-=(const RatFun& b) { return *this = *this - b; }
    RatFun& operator*=(const RatFun& b) { return *this = *this * b; }
    friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }
    friend bool operator<(const RatFun& a, const RatFun& b) {
        if (a.den_ != b.den_) return a.den_ < b.den_;
        return a.num_ < b.num_;
    }

    RatFun pow(long e) const;
    RatFun inverse() const;
    RatFun shift(long k) const { return RatFun(num_.shift(k), den_.shift(k), true); }
    RatFun galois(unsigned k) const { return RatFun(num_.galois(k), den_.galois(k)); }
    // Value at an integer, 0 if the denominator vanishes there.
    CycNum eval_at(long n) const;

    std::string str(const std::string& var = "x") const;

private:
    RatFun(Poly num, Poly den, bool reduced) : num_(std::move(num)), den_(std::move(den)) { (void)reduced; }
    Poly num_, den_;
};

// Over Q(zeta_field) joined with the field of f.
Factorization factorize(const RatFun& f, unsigned field = 1);

}  // namespace prodring
