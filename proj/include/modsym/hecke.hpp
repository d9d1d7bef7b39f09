#pragma once

#include <string>
#include <vector>

#include "modsym/manin.hpp"
#include "modsym/polynomial.hpp"
#include "modsym/reduction.hpp"

namespace modsym {

struct HeckeMatrix {
  long p = 0;
  bool divides_level = false;  // true for the U_p variant
  RatMatrix matrix;            // column k is the image of basis element k

  std::string label() const { return (divides_level ? "U_" : "T_") + std::to_string(p); }
};

bool is_prime(long p);

// Matrices g with T_p x = sum g x: [[1, r], [0, p]] for 0 <= r < p, plus
// [[p, 0], [0, 1]] when p does not divide N.
std::vector<IntMatrix> hecke_coset_representatives(long p, long level);

// Column k is the sum over coset representatives g of project(reduce(g s_k)).
HeckeMatrix hecke_matrix(const ManinSpace& space, long p, Reducer& reducer);
HeckeMatrix hecke_matrix(const ManinSpace& space, long p, Strategy strategy = Strategy::Auto);

struct EigenReport {
  Polynomial charpoly;
  Factorization factors;
};

EigenReport eigen_report(const RatMatrix& m);

}  // namespace modsym
