#pragma once

#include <map>
#include <optional>
#include <vector>

#include "modsym/simplex.hpp"

namespace modsym {

// Gamma_0(N) inside SL_n(Z): last row congruent to (0, ..., 0, *) mod N.
// Level 1 is all of SL_n(Z).
struct GammaContext {
  std::size_t n = 2;
  long level = 1;
};

bool in_gamma(const IntMatrix& g, const GammaContext& ctx);

struct Equivalence {
  IntMatrix gamma;
  int sign = 1;  // gamma applied to `from`, reordered to `to`, has this parity
};

// Some gamma in Gamma with gamma * from = +-to as sets of projective points,
// where both tuples are canonical and span Q^n.
std::optional<Equivalence> find_equivalence(const PointTuple& from, const PointTuple& to, const GammaContext& ctx);
// An element of Gamma stabilizing `t` through an odd permutation; such
// tuples vanish in the rational coinvariants.
std::optional<IntMatrix> odd_stabilizer(const PointTuple& t, const GammaContext& ctx);

// Apply g to each point and canonicalize; returns the permutation sign.
int act_on_tuple(const IntMatrix& g, const PointTuple& t, PointTuple& out);

struct OrbitMatch {
  std::size_t rep;  // index into OrbitTable::reps()
  Equivalence to_member;  // gamma * rep = sign * member
};

// Orbit representatives in insertion order, bucketed by the multiset of
// absolute maximal minors (a Gamma-invariant).
class OrbitTable {
 public:
  explicit OrbitTable(GammaContext ctx) : ctx_(ctx) {}
  std::optional<OrbitMatch> find(const PointTuple& t) const;
  // Finds t's orbit, inserting t as a new representative when absent.
  OrbitMatch find_or_insert(const PointTuple& t);
  const std::vector<PointTuple>& reps() const { return reps_; }
  const GammaContext& context() const { return ctx_; }

 private:
  GammaContext ctx_;
  std::vector<PointTuple> reps_;
  std::map<std::vector<BigInt>, std::vector<std::size_t>> buckets_;
};

// Image of a chain in the rational Gamma-coinvariants: every tuple rewritten
// on its orbit's minimal member, orbits with an odd stabilizer dropped.
PointChain reduce_mod_gamma(const PointChain& chain, const GammaContext& ctx);

}  // namespace modsym
