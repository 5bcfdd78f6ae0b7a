#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "prodring/errors.hpp"
#include "prodring/real.hpp"

namespace prodring {

using BigInt = mpz_class;
using BigRat = mpq_class;

unsigned long gcd_ul(unsigned long a, unsigned long b);
unsigned long lcm_ul(unsigned long a, unsigned long b);
unsigned euler_phi(unsigned n);
std::vector<unsigned> divisors(unsigned n);
std::vector<std::pair<unsigned, unsigned>> factor_ul(unsigned long n);

// N ≡ 2 (mod 4) gives the same field as N/2.
unsigned normalize_conductor(unsigned n);

class CycField {
public:
    static const CycField& get(unsigned n);

    unsigned conductor() const { return n_; }
    unsigned degree() const { return phi_; }
    // Ascending coefficients of the cyclotomic polynomial.
    const std::vector<BigInt>& min_poly() const { return minpoly_; }
    // zeta^j reduced modulo the cyclotomic polynomial, for 0 <= j < N.
    const std::vector<std::vector<long>>& powers() const { return powers_; }
    const std::vector<unsigned>& units() const { return units_; }

private:
    explicit CycField(unsigned n);
    unsigned n_, phi_;
    std::vector<BigInt> minpoly_;
    std::vector<std::vector<long>> powers_;
    std::vector<unsigned> units_;
};

std::vector<BigInt> cyclotomic_poly(unsigned n);

class CycNum {
public:
    CycNum() : n_(1), c_{BigRat(0)} {}
    CycNum(long v) : n_(1), c_{BigRat(v)} {}
    CycNum(const BigInt& v) : n_(1), c_{BigRat(v)} {}
    CycNum(const BigRat& v) : n_(1), c_{v} { c_[0].canonicalize(); }
    CycNum(unsigned n, std::vector<BigRat> coeffs);

    // Primitive root e^{2 pi i / n}, stored in the normalized field.
    static CycNum zeta(unsigned n);
    static CycNum zeta_pow(unsigned n, long k);

    unsigned conductor() const { return n_; }
    const std::vector<BigRat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    BigRat rational() const;  // precondition: is_rational()

    CycNum lift_to(unsigned m) const;
    // Smallest conductor whose field contains this element.
    CycNum lowered() const;

    CycNum operator-() const;
    CycNum& operator+=(const CycNum& b);
    CycNum& operator-=(const CycNum& b);
    CycNum& operator*=(const CycNum& b);
    CycNum& operator/=(const CycNum& b);
    friend CycNum operator+(CycNum a, const CycNum& b) { a += b; return a; }
    friend CycNum operator-(CycNum a, const CycNum& b) { a -= b; return a; }
    friend CycNum operator*(CycNum a, const CycNum& b) { a *= b; return a; }
    friend CycNum operator/(CycNum a, const CycNum& b) { a /= b; return a; }
    friend bool operator==(const CycNum& a, const CycNum& b);
    friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }
    // Total order within a common field (lexicographic on coefficients after lifting).
    friend bool operator<(const CycNum& a, const CycNum& b);

    CycNum inverse() const;
    CycNum pow(long e) const;
    CycNum galois(unsigned k) const;

    Complex embed(mpfr_prec_t prec, unsigned k = 1) const;
    std::vector<Complex> conjugates(mpfr_prec_t prec) const;

    std::string str() const;

private:
    unsigned n_;
    std::vector<BigRat> c_;
};

unsigned common_conductor(unsigned a, unsigned b);

// Smallest t > 0 with a^t = 1, or 0 if a is not a root of unity.
unsigned order_of(const CycNum& a);

// A square root of d in Q(zeta_{4d}) (conductor normalized) with positive real embedding.
CycNum sqrt_embed(long d);

bool is_squarefree(unsigned long d);

}  // namespace prodring
