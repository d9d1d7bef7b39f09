#pragma once

#include "modsym/arith.hpp"

namespace modsym {

struct LllResult {
  IntMatrix basis;      // reduced basis, one vector per column
  IntMatrix transform;  // unimodular, basis = input * transform
};

// Integral LLL reduction of the columns of `basis`. All Gram-Schmidt data is
// carried as exact integers (subdeterminants d_i and scaled coefficients
// lambda_{k,j} = d_j mu_{k,j}). Columns must be linearly independent.
LllResult lll_reduce(const IntMatrix& basis, const BigRat& delta = BigRat(3, 4));

// True when the columns are size reduced (|mu| <= 1/2) and satisfy the
// Lovasz condition for delta. Uses rational Gram-Schmidt.
bool is_lll_reduced(const IntMatrix& basis, const BigRat& delta = BigRat(3, 4));

}  // namespace modsym
