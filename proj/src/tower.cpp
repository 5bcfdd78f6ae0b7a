#include "prodring/tower.hpp"

#include <algorithm>

namespace prodring {

namespace {

void trim(Exps& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
}

Exps add_exps(const Exps& a, const Exps& b, long scale_b = 1) {
    Exps r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += scale_b * b[i];
    return r;
}

}  // namespace

TowerElem::TowerElem(const Tower* t, const RatFun& c) : t_(t) {
    if (!c.is_zero()) terms_[Exps{}] = c;
}

TowerElem::TowerElem(const Tower* t, const RatFun& c, Exps e) : t_(t) { add_term(std::move(e), c); }

void TowerElem::add_term(Exps e, const RatFun& c) {
    if (c.is_zero()) return;
    if (t_) t_->reduce(e);
    trim(e);
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(std::move(e), c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

bool TowerElem::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second.is_one();
}

RatFun TowerElem::free_coeff() const {
    auto it = terms_.find(Exps{});
    return it == terms_.end() ? RatFun(0) : it->second;
}

std::size_t TowerElem::depth() const {
    std::size_t d = 0;
    for (const auto& [e, c] : terms_)
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) d = std::max(d, t_->gen(i).depth);
    return d;
}

TowerElem operator+(const TowerElem& a, const TowerElem& b) {
    TowerElem r = a;
    if (!r.t_) r.t_ = b.t_;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
}

TowerElem TowerElem::operator-() const {
    TowerElem r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

TowerElem operator-(const TowerElem& a, const TowerElem& b) { return a + (-b); }

TowerElem operator*(const TowerElem& a, const TowerElem& b) {
    TowerElem r;
    r.t_ = a.t_ ? a.t_ : b.t_;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(add_exps(ea, eb), ca * cb);
    return r;
}

TowerElem TowerElem::inverse() const {
    if (!is_unit_monomial()) throw NonUnitDivisor();
    const auto& [e, c] = *terms_.begin();
    return TowerElem(t_, c.inverse(), add_exps(Exps{}, e, -1));
}

TowerElem TowerElem::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    TowerElem r(t_, RatFun(1)), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

TowerElem TowerElem::sigma(long power) const {
    TowerElem cur = *this;
    const int dir = power >= 0 ? 1 : -1;
    for (long s = 0; s < std::abs(power); ++s) {
        TowerElem next;
        next.t_ = t_;
        for (const auto& [e, c] : cur.terms_) {
            TowerElem term(t_, c.shift(dir), e);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0) term = term * t_->shift_quotient(i, dir).pow(e[i]);
            next = next + term;
        }
        cur = std::move(next);
    }
    return cur;
}

CycNum TowerElem::ev(long n) const {
    CycNum s(0);
    for (const auto& [e, c] : terms_) {
        CycNum v = c.eval_at(n);
        if (v.is_zero()) continue;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            CycNum g = t_->gen_value(i, n);
            if (g.is_zero() && e[i] < 0) throw DivisionByZero();
            v *= g.pow(e[i]);
        }
        s += v;
    }
    return s;
}

std::string TowerElem::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += t_->gen(i).name;
            if (e[i] != 1) mono += "^" + (e[i] < 0 ? "(" + std::to_string(e[i]) + ")" : std::to_string(e[i]));
        }
        std::string cs = c.str("x");
        std::string term;
        if (mono.empty()) term = cs;
        else if (c.is_one()) term = mono;
        else if (cs == "-1") term = "-" + mono;
        else {
            const bool sum = cs.find(" + ") != std::string::npos || cs.find(" - ") != std::string::npos;
            term = (sum ? "(" + cs + ")" : cs) + "*" + mono;
        }
        if (out.empty()) out = term;
        else if (term[0] == '-') out += " - " + term.substr(1);
        else out += " + " + term;
    }
    return out;
}

void Tower::reduce(Exps& e) const {
    for (std::size_t i = 0; i < e.size() && i < gens_.size(); ++i)
        if (gens_[i].kind == Generator::A) {
            const long l = gens_[i].order;
            e[i] = ((e[i] % l) + l) % l;
        }
}

TowerElem Tower::gen_elem(std::size_t i, long power) const {
    Exps e(i + 1, 0);
    e[i] = power;
    return TowerElem(this, RatFun(1), e);
}

std::size_t Tower::add(Generator g) {
    if (!g.quotient.is_unit_monomial()) throw Error("shift quotient must be a unit monomial");
    const auto& [e, c] = *g.quotient.terms().begin();
    if (e.size() > gens_.size()) throw Error("shift quotient references a later generator");
    g.depth = g.quotient.depth() + 1;
    if (g.name.empty()) g.name = "t" + std::to_string(gens_.size() + 1);
    (void)c;
    std::lock_guard lk(mu_);
    gens_.push_back(std::move(g));
    inv_quot_.emplace_back();
    cache_.emplace_back();
    return gens_.size() - 1;
}

std::size_t Tower::add_A(unsigned order, const TowerElem& quotient, long lower, const CycNum& init, std::string name) {
    if (order < 2) throw Error("A-extension order must be at least 2");
    if (!quotient.is_unit_monomial()) throw Error("shift quotient must be a unit monomial");
    const auto& [e, c] = *quotient.terms().begin();
    if (!c.is_constant()) throw Error("A-extension quotient coefficient must be constant");
    const unsigned ord = order_of(c.constant());
    if (ord == 0 || order % ord != 0) throw Error("A-extension quotient coefficient must be a root of unity of order dividing the extension order");
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0 && gens_.at(i).kind != Generator::A) throw Error("A-extension quotient may only use A-generators");
    if (!init.pow(order).is_one()) throw Error("initial value of an A-generator must be a root of unity of its order");
    Generator g;
    g.kind = Generator::A;
    g.order = order;
    g.quotient = quotient;
    g.eval_lower = lower;
    g.eval_init = init;
    g.name = std::move(name);
    return add(std::move(g));
}

std::size_t Tower::add_P(const TowerElem& quotient, long lower, const CycNum& init, std::string name,
                         std::function<CycNum(long)> custom_ev) {
    if (init.is_zero()) throw ZeroElement();
    Generator g;
    g.kind = Generator::P;
    g.quotient = quotient;
    g.eval_lower = lower;
    g.eval_init = init;
    g.name = std::move(name);
    g.custom_ev = std::move(custom_ev);
    return add(std::move(g));
}

std::vector<std::size_t> Tower::add_chain(Generator::Kind kind, const RatFun& base, std::size_t m, long lower,
                                          unsigned order, const std::string& prefix) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < m; ++k) {
        TowerElem q = constant(base);
        for (std::size_t j : idx) q = q * gen_elem(j);
        const std::string nm = prefix.empty() ? "" : prefix + std::to_string(k + 1);
        idx.push_back(kind == Generator::A ? add_A(order, q, lower, CycNum(1), nm) : add_P(q, lower, CycNum(1), nm));
    }
    return idx;
}

bool Tower::is_ordered() const {
    for (std::size_t i = 1; i < gens_.size(); ++i)
        if (gens_[i].depth < gens_[i - 1].depth) return false;
    return true;
}

bool Tower::is_basic() const {
    for (const auto& g : gens_) {
        const auto& [e, c] = *g.quotient.terms().begin();
        if (g.kind == Generator::A) {
            if (!e.empty() || !c.is_constant()) return false;
        } else {
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] != 0 && gens_[i].kind == Generator::A) return false;
        }
    }
    return true;
}

const TowerElem& Tower::shift_quotient(std::size_t i, int dir) const {
    if (dir > 0) return gens_.at(i).quotient;
    std::lock_guard lk(mu_);
    if (!inv_quot_.at(i)) inv_quot_[i] = gens_[i].quotient.sigma(-1).inverse();
    return *inv_quot_[i];
}

CycNum Tower::gen_value(std::size_t i, long n) const {
    const Generator& g = gens_.at(i);
    if (g.custom_ev) return g.custom_ev(n);
    if (n < g.eval_lower) return g.eval_init;
    std::lock_guard lk(mu_);
    auto& c = cache_[i];
    if (c.empty()) c.push_back(g.eval_init);
    const std::size_t need = static_cast<std::size_t>(n - g.eval_lower + 1);
    while (c.size() <= need) {
        const long m = g.eval_lower - 1 + static_cast<long>(c.size());
        CycNum step = g.quotient.ev(m - 1);
        auto& cc = cache_[i];
        cc.push_back(cc.back() * step);
    }
    return cache_[i][need];
}

std::optional<std::string> ev_hom_check(const TowerElem& e, const TowerElem& f, long from, long to) {
    const TowerElem prod = e * f, sum = e + f, se = e.sigma(1), sf = f.sigma(1);
    for (long n = from; n <= to; ++n) {
        const CycNum ve = e.ev(n), vf = f.ev(n);
        if (prod.ev(n) != ve * vf) return "product law fails at n = " + std::to_string(n);
        if (sum.ev(n) != ve + vf) return "sum law fails at n = " + std::to_string(n);
        if (se.ev(n) != e.ev(n + 1)) return "shift law fails for the first element at n = " + std::to_string(n);
        if (sf.ev(n) != f.ev(n + 1)) return "shift law fails for the second element at n = " + std::to_string(n);
    }
    return std::nullopt;
}

}  // namespace prodring
