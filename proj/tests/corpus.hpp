#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace corpus {

inline const char* kRunning =
    "Prod(k,1,n, (24*k+1)/(-sqrt(3)) * Prod(j,3,k, (-2*(j^3-3*j+2))/(5*(j^2-j-2))))";
inline const char* kRate = "1/2 * Prod(k,1,n-1, 1/36 * Prod(i,1,k-1,(i+1)*(i+2)/(4*(2*i+3)^2)))";
inline const char* kRate2 =
    "1/2 * Prod(k,1,n-1, 1/36 * Prod(i,1,k-1,(i+1)*(i+2)/(4*(2*i+3)^2))) + "
    "Prod(k,1,n, 4*(3+2*k)^4/((k+1)^2*(2*k+1)^4*(k+2)^2) * Prod(i,1,k, -(i+1)*(i+2)/(4*(2*i-1)^2)))";
inline const char* kUnity =
    "sqrt(3)*Prod(i,1,n,-1) + 2*Prod(k,1,n,Prod(i,1,k,-1)) + 3*Prod(i,1,n,-1)*Prod(k,1,n,Prod(i,1,k,-1))";
// Out[3] as printed for kRate.
inline const char* kRatePrinted =
    "9*Prod(k,1,n,2)^5*Prod(k,1,n,k+3/2)^4*Prod(k,1,n,Prod(i,1,k,i+1))^2 / ((2*n+3)*Prod(k,1,n,3)^2*"
    "Prod(k,1,n,Prod(i,1,k,2))^4*Prod(k,1,n,k+1)^3*Prod(k,1,n,Prod(i,1,k,i+3/2))^2)";

struct Golden {
    std::string name;
    std::string text;
};

inline std::vector<Golden> golden() {
    return {
        {"running example", kRunning},
        {"rate", kRate},
        {"rate combined", kRate2},
        {"roots of unity", kUnity},
        {"cancelling pair", "Prod(k,1,n,k+1)*Prod(k,1,n,k+1)^(-1)"},
        {"shifted factorials", "Prod(k,1,n,k+2) - (n+1)*(n+2)/2*Prod(k,1,n,k)"},
        {"mixed depths", "Prod(k,2,n,(k^2+1)*Prod(i,1,k,3*i/(i+4))) + 7*Prod(k,1,n,Prod(i,1,k,-2))"},
        {"cube roots", "Prod(k,1,n,zeta(3)) + Prod(k,1,n,Prod(i,1,k,zeta(3)*2))^2"},
        {"zero", "Prod(k,1,n,4) - Prod(k,1,n,2)^2"},
        {"depth three", "Prod(k,1,n,Prod(i,1,k,Prod(j,1,i,(j+1)/2)))"},
    };
}

// Multiplicands in the variable {v}, valid from 1 on.
inline const std::vector<std::string>& pool() {
    static const std::vector<std::string> p{"({v}+1)", "(2*{v}+3)", "({v}^2+1)", "3", "(-2)", "(({v}+2)/(2*{v}+5))",
                                            "(1/4)", "(5*{v}+1)", "({v}+1/2)", "sqrt(2)"};
    return p;
}

inline std::string subst(std::string s, const std::string& v) {
    for (std::size_t at; (at = s.find("{v}")) != std::string::npos;) s.replace(at, 3, v);
    return s;
}

struct Factor {
    int depth = 1;
    long lower = 1;
    std::vector<std::string> mults;  // innermost multiplicand = product of these
    int exp = 1;
};

inline std::string prod_text(const Factor& f, const std::vector<std::string>& mults, long lower) {
    std::string body;
    for (const auto& m : mults) body += (body.empty() ? "" : "*") + subst(m, f.depth == 1 ? "k" : "i");
    if (f.depth == 1) return "Prod(k," + std::to_string(lower) + ",n," + body + ")";
    return "Prod(k," + std::to_string(lower) + ",n,Prod(i," + std::to_string(f.lower) + ",k," + body + "))";
}

inline std::string power(const std::string& x, int e) { return "(" + x + ")^(" + std::to_string(e) + ")"; }

// A product monomial and an oracle-equal rearrangement of it.
inline std::pair<std::string, std::string> rearrangement(std::mt19937_64& g) {
    std::uniform_int_distribution<int> nf(2, 3), dep(1, 2), lo(1, 2), pk(0, static_cast<int>(pool().size()) - 1),
        cnt(1, 2), ex(1, 4), coin(0, 1);
    std::vector<Factor> fs;
    for (int i = nf(g); i > 0; --i) {
        Factor f;
        f.depth = dep(g);
        f.lower = lo(g);
        for (int j = cnt(g); j > 0; --j) f.mults.push_back(pool()[static_cast<std::size_t>(pk(g))]);
        const int e = ex(g);
        f.exp = e <= 2 ? e : 2 - e;
        fs.push_back(f);
    }
    const std::string coeff = "(" + std::to_string(1 + static_cast<int>(g() % 7)) + "/(n+1))";
    std::string a = coeff;
    for (const auto& f : fs) a += "*" + power(prod_text(f, f.mults, f.lower), f.exp);
    std::vector<std::string> parts;
    for (const auto& f : fs) {
        std::string p;
        if (f.mults.size() == 2 && coin(g)) {
            p = prod_text(f, {f.mults[0]}, f.lower) + "*" + prod_text(f, {f.mults[1]}, f.lower);
        } else if (f.depth == 1 && coin(g)) {
            std::string first;
            for (const auto& m : f.mults) first += (first.empty() ? "" : "*") + subst(m, "(" + std::to_string(f.lower) + ")");
            p = "(" + first + ")*" + prod_text(f, f.mults, f.lower + 1);
        } else {
            std::vector<std::string> ms = f.mults;
            std::reverse(ms.begin(), ms.end());
            p = prod_text(f, ms, f.lower);
        }
        parts.push_back(power(p, f.exp));
    }
    std::shuffle(parts.begin(), parts.end(), g);
    std::string b;
    for (const auto& p : parts) b += (b.empty() ? "" : "*") + p;
    b += "*" + coeff;
    return {a, b};
}

}  // namespace corpus
