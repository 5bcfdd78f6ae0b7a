#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "prodring/poly.hpp"

namespace prodring {

class Tower;

// Exponent vector, one entry per generator, trailing zeros trimmed.
using Exps = std::vector<long>;

// Laurent polynomial in the tower generators with coefficients in K(x).
class TowerElem {
public:
    TowerElem() = default;
    TowerElem(const Tower* t, const RatFun& c);
    TowerElem(const Tower* t, const RatFun& c, Exps e);

    const Tower* tower() const { return t_; }
    const std::map<Exps, RatFun>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_unit_monomial() const { return terms_.size() == 1; }
    // Coefficient of the constant monomial (0 if absent).
    RatFun free_coeff() const;
    std::size_t depth() const;

    friend TowerElem operator+(const TowerElem& a, const TowerElem& b);
    friend TowerElem operator-(const TowerElem& a, const TowerElem& b);
    friend TowerElem operator*(const TowerElem& a, const TowerElem& b);
    TowerElem operator-() const;
    friend bool operator==(const TowerElem& a, const TowerElem& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const TowerElem& a, const TowerElem& b) { return !(a == b); }
    TowerElem pow(long e) const;  // e < 0 only for unit monomials
    TowerElem inverse() const;    // NonUnitDivisor unless a unit monomial
    friend TowerElem operator/(const TowerElem& a, const TowerElem& b) { return a * b.inverse(); }

    TowerElem sigma(long power = 1) const;
    CycNum ev(long n) const;
    std::string str() const;

private:
    void add_term(Exps e, const RatFun& c);
    const Tower* t_ = nullptr;
    std::map<Exps, RatFun> terms_;
};

struct Generator {
    enum Kind { A, P } kind = P;
    unsigned order = 0;  // A only
    TowerElem quotient;  // sigma(t) = quotient * t
    std::size_t depth = 1;
    long eval_lower = 1;
    CycNum eval_init{1};
    std::string name;
    // Replaces the product recurrence when set (used for negative controls).
    std::function<CycNum(long)> custom_ev;
};

class Tower {
public:
    explicit Tower(unsigned field = 1) : field_(field) {}
    Tower(const Tower&) = delete;
    Tower& operator=(const Tower&) = delete;

    unsigned field() const { return field_; }
    std::size_t size() const { return gens_.size(); }
    const Generator& gen(std::size_t i) const { return gens_.at(i); }

    std::size_t add_A(unsigned order, const TowerElem& quotient, long lower = 1, const CycNum& init = CycNum(1),
                      std::string name = "");
    std::size_t add_P(const TowerElem& quotient, long lower = 1, const CycNum& init = CycNum(1), std::string name = "",
                      std::function<CycNum(long)> custom_ev = nullptr);
    // sigma(t_k) = c t_1 ... t_{k-1} t_k for k = 1..m; returns the generator indices.
    std::vector<std::size_t> add_chain(Generator::Kind kind, const RatFun& base, std::size_t m, long lower,
                                       unsigned order = 0, const std::string& prefix = "");

    TowerElem one() const { return TowerElem(this, RatFun(1)); }
    TowerElem constant(const RatFun& c) const { return TowerElem(this, c); }
    TowerElem x() const { return TowerElem(this, RatFun(Poly::x())); }
    TowerElem gen_elem(std::size_t i, long power = 1) const;

    bool is_ordered() const;
    bool is_basic() const;

    // Reduces A-exponents into [0, order).
    void reduce(Exps& e) const;
    // sigma^{+-1}(t_i) / t_i as a unit monomial.
    const TowerElem& shift_quotient(std::size_t i, int dir) const;
    CycNum gen_value(std::size_t i, long n) const;

private:
    std::size_t add(Generator g);
    unsigned field_;
    std::vector<Generator> gens_;
    mutable std::vector<std::optional<TowerElem>> inv_quot_;
    mutable std::vector<std::vector<CycNum>> cache_;
    mutable std::recursive_mutex mu_;
};

// Checks the evaluation-function laws on [from, to]; returns a description of the first failure.
std::optional<std::string> ev_hom_check(const TowerElem& e, const TowerElem& f, long from, long to);

}  // namespace prodring
