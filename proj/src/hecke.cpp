#include "modsym/hecke.hpp"

namespace modsym {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<IntMatrix> hecke_coset_representatives(long p, long level) {
  if (!is_prime(p)) throw PreconditionError("Hecke operator index " + std::to_string(p) + " is not prime");
  std::vector<IntMatrix> reps;
  for (long r = 0; r < p; ++r) {
    IntMatrix g(2, 2);
    g(0, 0) = 1;
    g(0, 1) = r;
    g(1, 1) = p;
    reps.push_back(g);
  }
  if (level % p != 0) {
    IntMatrix g(2, 2);
    g(0, 0) = p;
    g(1, 1) = 1;
    reps.push_back(g);
  }
  return reps;
}

HeckeMatrix hecke_matrix(const ManinSpace& space, long p, Reducer& reducer) {
  std::vector<IntMatrix> reps = hecke_coset_representatives(p, space.level());
  HeckeMatrix h{p, space.level() % p == 0, RatMatrix(space.dimension(), space.dimension())};
  for (std::size_t k = 0; k < space.dimension(); ++k) {
    ModularSymbol s = space.basis_symbol(k);
    SymbolChain image;
    for (const auto& g : reps)
      if (auto t = act(g, s)) image.add(*t, 1);
    std::vector<BigRat> col = space.project(reducer.reduce(image));
    for (std::size_t i = 0; i < col.size(); ++i) h.matrix(i, k) = col[i];
  }
  return h;
}

HeckeMatrix hecke_matrix(const ManinSpace& space, long p, Strategy strategy) {
  Reducer reducer(strategy);
  return hecke_matrix(space, p, reducer);
}

EigenReport eigen_report(const RatMatrix& m) {
  EigenReport r;
  r.charpoly = charpoly(m);
  r.factors = factor_over_q(r.charpoly);
  return r;
}

}  // namespace modsym
