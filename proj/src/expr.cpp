#include "prodring/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace prodring {

NestedProd NestedProd::inner() const {
    NestedProd r;
    r.lowers.assign(lowers.begin() + 1, lowers.end());
    r.mults.assign(mults.begin() + 1, mults.end());
    return r;
}

bool NestedProd::factored() const {
    for (std::size_t i = 0; i + 1 < mults.size(); ++i)
        if (!mults[i].is_one()) return false;
    return true;
}

std::vector<CycNum> eval_prod_table(const NestedProd& p, long upto) {
    const std::size_t w = static_cast<std::size_t>(std::max(upto, 0L)) + 1;
    std::vector<CycNum> below(w, CycNum(1)), cur(w);
    for (std::size_t lvl = p.depth(); lvl-- > 0;) {
        CycNum run(1);
        for (std::size_t k = 0; k < w; ++k) {
            if (static_cast<long>(k) >= p.lowers[lvl]) run *= p.mults[lvl].eval_at(static_cast<long>(k)) * below[k];
            cur[k] = run;
        }
        below.swap(cur);
    }
    return below;
}

CycNum eval_prod(const NestedProd& p, long n) {
    if (n < 0) return CycNum(1);
    return eval_prod_table(p, n)[static_cast<std::size_t>(n)];
}

namespace {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (const auto& [p, e] : b) {
        int& x = r[p];
        x += e;
        if (x == 0) r.erase(p);
    }
    return r;
}

void add_term(std::map<Monomial, RatFun>& t, const Monomial& m, const RatFun& c) {
    if (c.is_zero()) return;
    auto it = t.find(m);
    if (it == t.end()) {
        t.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
}

}  // namespace

SExpr SExpr::product(const NestedProd& p, int e) {
    SExpr r;
    if (e == 0) {
        r.t_[Monomial{}] = RatFun(1);
        return r;
    }
    r.t_[Monomial{{p, e}}] = RatFun(1);
    return r;
}

bool SExpr::has_products() const {
    for (const auto& [m, c] : t_)
        if (!m.empty()) return true;
    return false;
}

SExpr operator+(const SExpr& a, const SExpr& b) {
    SExpr r = a;
    for (const auto& [m, c] : b.t_) add_term(r.t_, m, c);
    return r;
}

SExpr SExpr::operator-() const {
    SExpr r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

SExpr operator-(const SExpr& a, const SExpr& b) { return a + (-b); }

SExpr operator*(const SExpr& a, const SExpr& b) {
    SExpr r;
    for (const auto& [ma, ca] : a.t_)
        for (const auto& [mb, cb] : b.t_) add_term(r.t_, mono_mul(ma, mb), ca * cb);
    return r;
}

SExpr SExpr::pow(long e) const {
    if (e == 0) return SExpr(RatFun(1));
    if (is_zero()) {
        if (e < 0) throw DivisionByZero();
        return *this;
    }
    if (!single()) {
        if (e < 0) throw Error("negative power of a sum");
        SExpr r(RatFun(1));
        for (long i = 0; i < e; ++i) r = r * *this;
        return r;
    }
    const auto& [m, c] = *t_.begin();
    Monomial mm;
    for (const auto& [p, x] : m) mm[p] = static_cast<int>(x * e);
    SExpr r;
    r.t_[mm] = c.pow(e);
    return r;
}

ProdExprAst SExpr::to_ast(unsigned field, long threshold) const {
    ProdExprAst a;
    a.field = field;
    a.threshold = threshold;
    for (const auto& [m, c] : t_) {
        Term t;
        t.coeff = c;
        for (const auto& pe : m) t.mono.push_back(pe);
        a.terms.push_back(std::move(t));
    }
    return a;
}

SExpr SExpr::from_ast(const ProdExprAst& a) {
    SExpr r;
    for (const auto& t : a.terms) {
        Monomial m;
        for (const auto& [p, e] : t.mono) m = mono_mul(m, Monomial{{p, e}});
        add_term(r.t_, m, t.coeff);
    }
    return r;
}

namespace {

struct Token {
    enum Kind { Num, Ident, Sym, End } kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char ch = static_cast<unsigned char>(s[i]);
        if (std::isspace(ch)) {
            ++i;
            continue;
        }
        if (std::isdigit(ch)) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::Num, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::isalpha(ch) || ch == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Token::Ident, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::string("+-*/^(),").find(static_cast<char>(ch)) != std::string::npos) {
            out.push_back({Token::Sym, std::string(1, static_cast<char>(ch)), i});
            ++i;
            continue;
        }
        throw SyntaxError(std::string("unexpected character '") + static_cast<char>(ch) + "'", i);
    }
    out.push_back({Token::End, "", s.size()});
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& s) : toks_(lex(s)) {}

    RawPtr parse_all() {
        RawPtr e = expr();
        if (peek().kind != Token::End) throw SyntaxError("unexpected '" + peek().text + "'", peek().pos);
        return e;
    }

    unsigned field = 1;

private:
    const Token& peek() const { return toks_[i_]; }
    bool is_sym(const std::string& s) const { return peek().kind == Token::Sym && peek().text == s; }
    Token take() { return toks_[i_++]; }
    void expect(const std::string& s) {
        if (!is_sym(s)) throw SyntaxError("expected '" + s + "'", peek().pos);
        ++i_;
    }
    BigInt integer() {
        if (peek().kind != Token::Num) throw SyntaxError("expected integer", peek().pos);
        return BigInt(take().text);
    }
    long small_int(long lo, long hi) {
        const std::size_t pos = peek().pos;
        BigInt v = integer();
        if (!v.fits_slong_p() || v.get_si() < lo || v.get_si() > hi) throw SyntaxError("integer out of range", pos);
        return v.get_si();
    }

    static std::shared_ptr<RawNode> node(RawNode::Kind k, std::size_t pos) {
        auto n = std::make_shared<RawNode>();
        n->kind = k;
        n->pos = pos;
        return n;
    }

    RawPtr expr() {
        RawPtr lhs = term();
        while (is_sym("+") || is_sym("-")) {
            Token op = take();
            auto n = node(op.text == "+" ? RawNode::Add : RawNode::Sub, op.pos);
            n->kids = {lhs, term()};
            lhs = n;
        }
        return lhs;
    }

    RawPtr term() {
        RawPtr lhs = unary();
        while (is_sym("*") || is_sym("/")) {
            Token op = take();
            auto n = node(op.text == "*" ? RawNode::Mul : RawNode::Div, op.pos);
            n->kids = {lhs, unary()};
            lhs = n;
        }
        return lhs;
    }

    RawPtr unary() {
        if (is_sym("-")) {
            Token op = take();
            auto n = node(RawNode::Neg, op.pos);
            n->kids = {unary()};
            return n;
        }
        return factor();
    }

    RawPtr factor() {
        RawPtr base = atom();
        if (!is_sym("^")) return base;
        Token op = take();
        long e;
        if (is_sym("(")) {
            take();
            bool neg = false;
            if (is_sym("-")) {
                take();
                neg = true;
            }
            e = small_int(0, 1000000);
            if (neg) e = -e;
            expect(")");
        } else {
            bool neg = false;
            if (is_sym("-")) {
                take();
                neg = true;
            }
            e = small_int(0, 1000000);
            if (neg) e = -e;
        }
        auto n = node(RawNode::Pow, op.pos);
        n->exponent = e;
        n->kids = {base};
        return n;
    }

    RawPtr atom() {
        const Token& t = peek();
        if (t.kind == Token::Num) {
            auto n = node(RawNode::Const, t.pos);
            n->value = CycNum(integer());
            return n;
        }
        if (is_sym("(")) {
            take();
            RawPtr e = expr();
            expect(")");
            return e;
        }
        if (t.kind != Token::Ident) throw SyntaxError(t.kind == Token::End ? "unexpected end of input" : "unexpected '" + t.text + "'", t.pos);
        const std::string name = t.text;
        const std::size_t pos = t.pos;
        take();
        if (name == "sqrt" || name == "zeta") {
            expect("(");
            const std::size_t apos = peek().pos;
            long v = small_int(1, 1000000);
            expect(")");
            auto n = node(RawNode::Const, pos);
            if (name == "zeta") {
                n->value = CycNum::zeta(static_cast<unsigned>(v));
            } else {
                long sq = 1, rest = v;
                for (long p = 2; p * p <= rest; ++p)
                    while (rest % (p * p) == 0) {
                        rest /= p * p;
                        sq *= p;
                    }
                if (v == 0) throw SyntaxError("sqrt of zero", apos);
                n->value = rest == 1 ? CycNum(sq) : CycNum(sq) * sqrt_embed(rest);
            }
            field = common_conductor(field, n->value.conductor());
            return n;
        }
        if (name == "Prod") {
            expect("(");
            if (peek().kind != Token::Ident) throw SyntaxError("expected product variable", peek().pos);
            auto n = node(RawNode::Prod, pos);
            n->name = take().text;
            if (n->name == "Prod" || n->name == "sqrt" || n->name == "zeta")
                throw SyntaxError("reserved name used as variable", pos);
            expect(",");
            n->lower = small_int(0, 1000000);
            expect(",");
            if (peek().kind != Token::Ident) throw SyntaxError("expected upper bound variable", peek().pos);
            n->upper_var = take().text;
            if (is_sym("+") || is_sym("-")) {
                bool neg = take().text == "-";
                long c = small_int(0, 1000000);
                n->upper_offset = neg ? -c : c;
            }
            expect(",");
            n->kids = {expr()};
            expect(")");
            return n;
        }
        auto n = node(RawNode::Var, pos);
        n->name = name;
        return n;
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
};

struct Sem {
    SExpr e;
    long thr = 0;
};

class Converter {
public:
    explicit Converter(RawEvaluator& ev) : ev_(ev) {}

    Sem conv(const RawNode* n, const std::string& var) {
        switch (n->kind) {
            case RawNode::Const:
                return {SExpr(RatFun(n->value)), 0};
            case RawNode::Var:
                if (n->name != var) throw SyntaxError("variable '" + n->name + "' is not bound here", n->pos);
                return {SExpr(RatFun(Poly::x())), 0};
            case RawNode::Add:
            case RawNode::Sub: {
                Sem a = conv(n->kids[0].get(), var), b = conv(n->kids[1].get(), var);
                return {n->kind == RawNode::Add ? a.e + b.e : a.e - b.e, std::max(a.thr, b.thr)};
            }
            case RawNode::Mul: {
                Sem a = conv(n->kids[0].get(), var), b = conv(n->kids[1].get(), var);
                return {a.e * b.e, std::max(a.thr, b.thr)};
            }
            case RawNode::Div: {
                Sem a = conv(n->kids[0].get(), var), b = conv(n->kids[1].get(), var);
                if (b.e.is_zero()) throw SyntaxError("division by zero", n->pos);
                if (!b.e.single()) throw SyntaxError("division by a sum containing products", n->pos);
                return {a.e * b.e.pow(-1), std::max(a.thr, b.thr)};
            }
            case RawNode::Neg: {
                Sem a = conv(n->kids[0].get(), var);
                return {-a.e, a.thr};
            }
            case RawNode::Pow: {
                Sem a = conv(n->kids[0].get(), var);
                if (a.e.is_zero() && n->exponent < 0) throw SyntaxError("division by zero", n->pos);
                if (!a.e.single() && n->exponent < 0) throw SyntaxError("negative power of a sum containing products", n->pos);
                return {a.e.pow(n->exponent), a.thr};
            }
            case RawNode::Prod:
                return conv_prod(n, var);
        }
        throw Error("unreachable");
    }

private:
    Sem conv_prod(const RawNode* n, const std::string& var) {
        if (n->upper_var != var) throw SyntaxError("upper bound must be '" + var + "' (optionally with an offset)", n->pos);
        const RawNode* body_node = n->kids[0].get();
        Sem body = conv(body_node, n->name);
        const long l = n->lower;
        const std::string desc = "Prod(" + n->name + "," + std::to_string(l) + ",...)";
        if (body.e.is_zero()) throw InvalidLowerBound(desc, l);
        if (!body.e.single()) throw SyntaxError("product body must be a single term", n->pos);
        const auto& [mono, f] = *body.e.terms().begin();
        const long lp = std::max(l, body.thr);
        CycNum c(1);
        for (long k = l; k < lp; ++k) {
            CycNum b;
            try {
                b = ev_.eval_node(body_node, k);
            } catch (const DivisionByZero&) {
                throw InvalidLowerBound(desc, k);
            }
            if (b.is_zero()) throw InvalidLowerBound(desc, k);
            c *= b;
        }
        long bad = -1;
        for (const Poly* p : {&f.num(), &f.den()})
            for (long r : integer_roots(*p))
                if (r >= lp && (bad < 0 || r < bad)) bad = r;
        if (bad >= 0) throw InvalidLowerBound(desc, bad);
        SExpr base{RatFun(c)};
        const bool nest = mono.size() == 1 && mono.begin()->second == 1;
        if (!nest && (!f.is_one() || mono.empty())) base = base * SExpr::product(NestedProd{{lp}, {f}});
        for (const auto& [q, e] : mono) {
            NestedProd np;
            np.lowers.push_back(lp);
            np.mults.push_back(nest ? f : RatFun(1));
            np.lowers.insert(np.lowers.end(), q.lowers.begin(), q.lowers.end());
            np.mults.insert(np.mults.end(), q.mults.begin(), q.mults.end());
            base = base * SExpr::product(np, e);
        }
        const long off = n->upper_offset;
        long thr = lp > l ? lp - 1 : 0;
        if (off < 0) {
            thr = lp - off - 1;
            for (long i = 0; i < -off; ++i) {
                Sem b = subst(body.e, -i);
                base = base * b.e.pow(-1);
                thr = std::max(thr, b.thr);
            }
        } else if (off > 0) {
            thr = std::max(lp - 1, 0L);
            for (long i = 1; i <= off; ++i) {
                Sem b = subst(body.e, i);
                base = base * b.e;
                thr = std::max(thr, b.thr);
            }
        }
        return {base, thr};
    }

    Sem shifted(const NestedProd& p, long s) {
        Sem r{SExpr::product(p), 0};
        if (s == 0) return r;
        const long l0 = p.lowers[0];
        if (s < 0) {
            r.thr = l0 - s - 1;
            for (long j = 0; j < -s; ++j) {
                SExpr b(p.mults[0].shift(-j));
                if (p.depth() > 1) {
                    Sem in = shifted(p.inner(), -j);
                    b = b * in.e;
                    r.thr = std::max(r.thr, in.thr);
                }
                r.e = r.e * b.pow(-1);
            }
        } else {
            r.thr = std::max(l0 - 1, 0L);
            for (long i = 1; i <= s; ++i) {
                SExpr b(p.mults[0].shift(i));
                if (p.depth() > 1) {
                    Sem in = shifted(p.inner(), i);
                    b = b * in.e;
                    r.thr = std::max(r.thr, in.thr);
                }
                r.e = r.e * b;
            }
        }
        return r;
    }

    Sem subst(const SExpr& body, long s) {
        Sem out;
        for (const auto& [m, c] : body.terms()) {
            SExpr t(c.shift(s));
            for (const auto& [p, e] : m) {
                Sem sp = shifted(p, s);
                t = t * sp.e.pow(e);
                out.thr = std::max(out.thr, sp.thr);
            }
            out.e = out.e + t;
        }
        return out;
    }

    RawEvaluator& ev_;
};

}  // namespace

CycNum RawEvaluator::eval(long n) { return eval_node(root_.get(), n); }

CycNum RawEvaluator::eval_node(const RawNode* node, long v) {
    switch (node->kind) {
        case RawNode::Const:
            return node->value;
        case RawNode::Var:
            return CycNum(v);
        case RawNode::Add:
            return eval_node(node->kids[0].get(), v) + eval_node(node->kids[1].get(), v);
        case RawNode::Sub:
            return eval_node(node->kids[0].get(), v) - eval_node(node->kids[1].get(), v);
        case RawNode::Mul:
            return eval_node(node->kids[0].get(), v) * eval_node(node->kids[1].get(), v);
        case RawNode::Div:
            return eval_node(node->kids[0].get(), v) / eval_node(node->kids[1].get(), v);
        case RawNode::Neg:
            return -eval_node(node->kids[0].get(), v);
        case RawNode::Pow:
            return eval_node(node->kids[0].get(), v).pow(node->exponent);
        case RawNode::Prod:
            return prod_value(node, v + node->upper_offset);
    }
    throw Error("unreachable");
}

CycNum RawEvaluator::prod_value(const RawNode* node, long upper) {
    if (upper < node->lower) return CycNum(1);
    auto& pre = prefix_[node];
    if (pre.empty()) pre.push_back(CycNum(1));
    const std::size_t need = static_cast<std::size_t>(upper - node->lower) + 1;
    while (pre.size() <= need) {
        const long k = node->lower + static_cast<long>(pre.size()) - 1;
        CycNum b = eval_node(node->kids[0].get(), k);
        auto& again = prefix_[node];
        again.push_back(again.back() * b);
    }
    return prefix_[node][need];
}

ParsedInput parse_input(const std::string& text) {
    Parser p(text);
    ParsedInput out;
    out.text = text;
    out.raw = p.parse_all();
    RawEvaluator ev(out.raw);
    Converter conv(ev);
    Sem s = conv.conv(out.raw.get(), "n");
    out.ast = s.e.to_ast(p.field, s.thr);
    return out;
}

ProdExprAst parse(const std::string& text) { return parse_input(text).ast; }

std::vector<CycNum> oracle_eval_range(const ProdExprAst& a, long from, long to) {
    std::map<NestedProd, std::vector<CycNum>> tables;
    for (const auto& t : a.terms)
        for (const auto& [p, e] : t.mono)
            if (!tables.count(p)) tables.emplace(p, eval_prod_table(p, to));
    std::vector<CycNum> out;
    for (long n = from; n <= to; ++n) {
        CycNum s(0);
        for (const auto& t : a.terms) {
            CycNum v = t.coeff.eval_at(n);
            for (const auto& [p, e] : t.mono) v *= tables[p][static_cast<std::size_t>(n)].pow(e);
            s += v;
        }
        out.push_back(s);
    }
    return out;
}

CycNum oracle_eval(const ProdExprAst& a, long n) { return oracle_eval_range(a, n, n)[0]; }

std::string product_var_name(std::size_t d) {
    static const char* names[] = {"k", "i", "j", "l", "m", "p", "q", "r", "s"};
    if (d < 9) return names[d];
    return "k" + std::to_string(d);
}

namespace {

bool is_sum(const std::string& s) {
    int depth = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '(') ++depth;
        else if (ch == ')') --depth;
        else if (depth == 0 && (ch == '+' || ch == '-') && s[i - 1] == ' ') return true;
    }
    return false;
}

std::string print_level(const NestedProd& p, std::size_t lvl, const std::string& upper) {
    const std::string v = product_var_name(lvl);
    std::string body;
    std::string ms = p.mults[lvl].str(v);
    if (lvl + 1 < p.depth()) {
        std::string in = print_level(p, lvl + 1, v);
        if (p.mults[lvl].is_one()) body = in;
        else body = (is_sum(ms) ? "(" + ms + ")" : ms) + "*" + in;
    } else {
        body = ms;
    }
    return "Prod(" + v + "," + std::to_string(p.lowers[lvl]) + "," + upper + "," + body + ")";
}

std::string mono_str(const std::vector<std::pair<NestedProd, int>>& mono) {
    std::string s;
    for (const auto& [p, e] : mono) {
        if (!s.empty()) s += "*";
        s += print_prod(p);
        if (e < 0) s += "^(" + std::to_string(e) + ")";
        else if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

}  // namespace

std::string print_prod(const NestedProd& p, const std::string& upper) { return print_level(p, 0, upper); }

std::string print(const ProdExprAst& a) {
    std::string out;
    for (const auto& t : a.terms) {
        std::string ts;
        const std::string ms = mono_str(t.mono);
        const std::string cs = t.coeff.str("n");
        if (ms.empty()) ts = cs;
        else if (t.coeff.is_one()) ts = ms;
        else if (cs == "-1") ts = "-" + ms;
        else ts = (is_sum(cs) ? "(" + cs + ")" : cs) + "*" + ms;
        if (out.empty()) {
            out = ts;
        } else if (ts[0] == '-') {
            out += " - " + ts.substr(1);
        } else {
            out += " + " + ts;
        }
    }
    if (a.terms.empty()) return "0";
    return out;
}

nlohmann::json to_json(const ProdExprAst& a) {
    nlohmann::json j;
    std::map<NestedProd, std::string> ids;
    nlohmann::json prods = nlohmann::json::array();
    for (const auto& t : a.terms)
        for (const auto& [p, e] : t.mono) {
            if (ids.count(p)) continue;
            std::string id = "P" + std::to_string(ids.size() + 1);
            ids[p] = id;
            prods.push_back({{"id", id},
                             {"depth", p.depth()},
                             {"lower", p.lowers[0]},
                             {"base", p.mults.back().str(product_var_name(p.depth() - 1))},
                             {"text", print_prod(p)}});
        }
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : a.terms) {
        nlohmann::json ex = nlohmann::json::object();
        for (const auto& [p, e] : t.mono) ex[ids[p]] = e;
        terms.push_back({{"coeff", t.coeff.str("n")}, {"exponents", ex}});
    }
    j["products"] = prods;
    j["expression"] = terms;
    return j;
}

}  // namespace prodring
