#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace prodring {

using QMatrix = std::vector<std::vector<mpq_class>>;
using ZMatrix = std::vector<std::vector<mpz_class>>;
using ZVector = std::vector<mpz_class>;

// Solves A x = b over Q (A is rows x cols); nullopt if inconsistent. Free variables are set to 0.
std::optional<std::vector<mpq_class>> solve_linear(QMatrix a, std::vector<mpq_class> b);

// Inverse of a square nonsingular matrix over Q; nullopt if singular.
std::optional<QMatrix> invert(QMatrix a);

// Row-style Hermite normal form: returns H = U A with H in row echelon form, positive pivots,
// entries above pivots reduced into [0, pivot). Zero rows are dropped. U is optional output.
ZMatrix hermite_normal_form(const ZMatrix& a, ZMatrix* u = nullptr);

// Z-basis of the integer kernel {v : v A = 0} (A is rows x cols, v has length rows), in HNF.
ZMatrix integer_left_kernel(const ZMatrix& a);

// LLL reduction (delta = 3/4) of the rows of b, exact rational Gram-Schmidt.
ZMatrix lll_reduce(ZMatrix b);

mpz_class dot(const ZVector& a, const ZVector& b);

}  // namespace prodring
