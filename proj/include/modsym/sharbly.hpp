#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "modsym/congruence.hpp"
#include "modsym/reduction.hpp"

namespace modsym {

// A chain of k-sharblies [v_1, ..., v_{n+k}] in Z^n with rational
// coefficients. Tuples are canonical (sorted, projectivized); tuples not
// spanning Q^n are zero.
class SharblyChain {
 public:
  SharblyChain(GammaContext ctx, std::size_t k) : ctx_(ctx), k_(k), chain_(ctx.n) {}
  SharblyChain(GammaContext ctx, std::size_t k, PointChain chain);

  void add(PointTuple points, const BigRat& coefficient);
  const GammaContext& context() const { return ctx_; }
  std::size_t k() const { return k_; }
  const PointChain& chain() const { return chain_; }
  const PointChain::Terms& terms() const { return chain_.terms(); }
  bool empty() const { return chain_.empty(); }
  std::size_t size() const { return chain_.size(); }
  bool operator==(const SharblyChain& o) const { return k_ == o.k_ && chain_ == o.chain_; }

  // Alternating face map; throws PreconditionError for k = 0.
  SharblyChain boundary() const;
  // The same chain in the rational Gamma-coinvariants.
  SharblyChain mod_gamma() const;

 private:
  GammaContext ctx_;
  std::size_t k_;
  PointChain chain_;
};

// S_0 -> M_n: each n-tuple read as a modular symbol.
std::map<ModularSymbol, BigRat> to_modular_symbols(const SharblyChain& c);

// Maximum |det| over all n-subsets of all supported sharblies; 0 when empty.
BigInt sharbly_norm(const SharblyChain& c);

// Faces of the boundary that survive in the Gamma-coinvariants.
PointChain unmatched_faces(const SharblyChain& c);
bool is_cycle_mod_gamma(const SharblyChain& c);
// Throws CycleError listing the unmatched faces.
void require_cycle(const SharblyChain& c);

struct WeightedPoint {
  IntVector point;
  BigRat weight;
};

struct AssignedOrbit {
  PointTuple rep;
  std::vector<WeightedPoint> points;    // reducing points of the representative
  std::optional<IntMatrix> odd_stabilizer;
};

struct AssignedFace {
  std::size_t orbit;
  Equivalence transport;  // gamma * rep = sign * face
  std::vector<WeightedPoint> points;  // gamma-images of the orbit's points
};

// Reducing points chosen once per Gamma-orbit of nonunimodular submodular
// symbols and transported to every member. When the representative has an
// orientation-reversing stabilizer sigma the point is averaged over
// {w, sigma w} with weight 1/2 each, which keeps the choice equivariant.
struct EquivariantAssignment {
  GammaContext ctx;
  std::vector<AssignedOrbit> orbits;
  std::map<PointTuple, AssignedFace, TupleLess> faces;
  std::vector<std::string> injected;  // faces whose point was not transported
};

struct AssignmentOptions {
  Strategy strategy = Strategy::Auto;
  // Test hook: give the first member face whose independently computed
  // point differs from the transported one that independent point.
  bool break_equivariance = false;
};

EquivariantAssignment assign_reducing_points(const SharblyChain& xi, const AssignmentOptions& options = {});
// Re-checks gamma * rep = sign * face and w' = gamma w for every face, and
// every certificate; returns the faces that fail.
std::vector<std::string> verify_assignment(const EquivariantAssignment& a, Strategy strategy = Strategy::Auto);

// Replaces every u by -sum_{I nonempty} (-1)^{#I} u_I, I over all subsets,
// where a face without a point borrows the point of the first face that has
// one; sharblies without assigned faces are kept. The result is reduced mod
// Gamma.
SharblyChain one_sharbly_step(const SharblyChain& xi, const EquivariantAssignment& a);

// u + sum_{I nonempty} (-1)^{#I} u_I for explicit points w_i, one per face.
PointChain hyperoctahedral_relation(const PointTuple& u, const std::vector<IntVector>& w, std::size_t n);

// The #I = 1 terms that carry an old assigned face, summed mod Gamma. For an
// equivariant assignment on a cycle they cancel, so this is empty.
PointChain surviving_old_face_terms(const SharblyChain& xi, const EquivariantAssignment& a);
// Output sharblies having a face in an orbit that received a point. Such a
// face can be created anew by the #I >= 2 terms, so this is informational.
std::vector<std::string> recurring_assigned_faces(const SharblyChain& out, const EquivariantAssignment& a);

enum class Verdict { Reduced, Stalled, Oscillating, AuditFailed };
std::string to_string(Verdict v);

struct IterationRecord {
  std::size_t index;
  BigInt norm;
  std::size_t support;
  std::size_t orbits_assigned;
  bool decreased;
  bool cycle_ok;
  bool faces_ok;                // old-face terms cancelled
  std::size_t recurring_faces;  // output faces in an assigned orbit
};

struct ConvergenceReport {
  BigInt initial_norm;
  std::size_t initial_support = 0;
  std::vector<IterationRecord> iterations;
  Verdict verdict = Verdict::Stalled;
  std::vector<std::string> violations;
};

struct CycleReduction {
  SharblyChain chain;
  ConvergenceReport report;
};

CycleReduction reduce_cycle(const SharblyChain& xi, std::size_t max_iter = 50, const AssignmentOptions& options = {});

// Test cycles. The reduced cycle sum_g [g e1, g e2, g(e1 + e2)] over P^1(Z/N)
// lifts, its Hecke translates sum_alpha alpha u for the upper triangular
// coset representatives of determinant m (gcd(m, N) = 1), and boundaries
// of random 2-sharbly chains.
SharblyChain reduced_base_cycle(long level);
SharblyChain hecke_translate(const SharblyChain& xi, long m);
SharblyChain random_boundary_cycle(std::mt19937_64& rng, const GammaContext& ctx, std::size_t terms, long entry_bound);
SharblyChain random_sharbly_chain(std::mt19937_64& rng, const GammaContext& ctx, std::size_t k, std::size_t terms, long entry_bound);

}  // namespace modsym
