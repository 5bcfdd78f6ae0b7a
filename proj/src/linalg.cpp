#include "prodring/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace prodring {

std::optional<std::vector<mpq_class>> solve_linear(QMatrix a, std::vector<mpq_class> b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::size_t> pivcol;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        mpq_class inv = 1 / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            mpq_class f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivcol.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<mpq_class> x(cols, mpq_class(0));
    for (std::size_t i = 0; i < r; ++i) x[pivcol[i]] = b[i];
    return x;
}

std::optional<QMatrix> invert(QMatrix a) {
    const std::size_t n = a.size();
    QMatrix inv(n, std::vector<mpq_class>(n, mpq_class(0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        mpq_class f = 1 / a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] *= f;
            inv[c][j] *= f;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            mpq_class g = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= g * a[c][j];
                inv[i][j] -= g * inv[c][j];
            }
        }
    }
    return inv;
}

namespace {

void row_sub(ZMatrix& m, std::size_t dst, std::size_t src, const mpz_class& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] -= q * m[src][j];
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

ZMatrix hermite_normal_form(const ZMatrix& a_in, ZMatrix* u_out) {
    ZMatrix a = a_in;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    ZMatrix u(rows, ZVector(rows, mpz_class(0)));
    for (std::size_t i = 0; i < rows; ++i) u[i][i] = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (a[i][c] != 0 && (best == rows || abs(a[i][c]) < abs(a[best][c]))) best = i;
            if (best == rows) break;
            std::swap(a[best], a[r]);
            std::swap(u[best], u[r]);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (a[i][c] == 0) continue;
                mpz_class q = floor_div(a[i][c], a[r][c]);
                row_sub(a, i, r, q);
                row_sub(u, i, r, q);
                if (a[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (a[r][c] == 0) continue;
        if (a[r][c] < 0) {
            for (auto& x : a[r]) x = -x;
            for (auto& x : u[r]) x = -x;
        }
        for (std::size_t i = 0; i < r; ++i) {
            mpz_class q = floor_div(a[i][c], a[r][c]);
            row_sub(a, i, r, q);
            row_sub(u, i, r, q);
        }
        ++r;
    }
    if (u_out) *u_out = u;
    a.resize(r);
    return a;
}

ZMatrix integer_left_kernel(const ZMatrix& a) {
    ZMatrix u;
    ZMatrix h = hermite_normal_form(a, &u);
    ZMatrix ker(u.begin() + static_cast<std::ptrdiff_t>(h.size()), u.end());
    if (ker.empty()) return ker;
    return hermite_normal_form(ker);
}

mpz_class dot(const ZVector& a, const ZVector& b) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

ZMatrix lll_reduce(ZMatrix b) {
    const std::size_t n = b.size();
    if (n < 2) return b;
    const std::size_t m = b[0].size();
    QMatrix mu(n, std::vector<mpq_class>(n, mpq_class(0)));
    std::vector<mpq_class> bn(n);
    std::vector<std::vector<mpq_class>> bstar(n, std::vector<mpq_class>(m));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < m; ++t) bstar[i][t] = b[i][t];
        for (std::size_t j = 0; j < i; ++j) {
            mpq_class d = 0;
            for (std::size_t t = 0; t < m; ++t) d += mpq_class(b[i][t]) * bstar[j][t];
            mu[i][j] = bn[j] == 0 ? mpq_class(0) : mpq_class(d / bn[j]);
            for (std::size_t t = 0; t < m; ++t) bstar[i][t] -= mu[i][j] * bstar[j][t];
        }
        bn[i] = 0;
        for (std::size_t t = 0; t < m; ++t) bn[i] += bstar[i][t] * bstar[i][t];
    }
    const mpq_class delta(3, 4);
    auto round_q = [](const mpq_class& q) {
        mpq_class h = q + mpq_class(1, 2);
        mpz_class r;
        mpz_fdiv_q(r.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
        return r;
    };
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t jj = k; jj-- > 0;) {
            if (abs(mu[k][jj]) * 2 <= 1) continue;
            mpz_class q = round_q(mu[k][jj]);
            for (std::size_t t = 0; t < m; ++t) b[k][t] -= q * b[jj][t];
            for (std::size_t l = 0; l < jj; ++l) mu[k][l] -= q * mu[jj][l];
            mu[k][jj] -= q;
        }
        if (bn[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) {
            ++k;
            continue;
        }
        if (bn[k - 1] == 0) throw std::logic_error("lll: dependent rows");
        std::swap(b[k], b[k - 1]);
        mpq_class mk = mu[k][k - 1];
        mpq_class bnew = bn[k] + mk * mk * bn[k - 1];
        if (bnew == 0) throw std::logic_error("lll: dependent rows");
        mu[k][k - 1] = mk * bn[k - 1] / bnew;
        bn[k] = bn[k - 1] * bn[k] / bnew;
        bn[k - 1] = bnew;
        for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
        for (std::size_t i = k + 1; i < n; ++i) {
            mpq_class t = mu[i][k];
            mu[i][k] = mu[i][k - 1] - mk * t;
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
        }
        k = std::max<std::size_t>(k - 1, 1);
    }
    return b;
}

}  // namespace prodring
