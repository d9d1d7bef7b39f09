#include <random>

#include "doctest.h"
#include "modsym/sharbly.hpp"

using namespace modsym;

namespace {

PointChain chain_of(std::size_t n, std::initializer_list<std::pair<PointTuple, long>> terms) {
  PointChain c(n);
  for (const auto& [t, k] : terms) c.add(t, k);
  return c;
}

}  // namespace

TEST_CASE("sharbly boundary") {
  GammaContext ctx{2, 1};
  IntVector a{1, 0}, b{0, 1}, c{1, 2};
  SharblyChain u(ctx, 1);
  u.add({a, b, c}, 1);
  CHECK(u.boundary().chain() == chain_of(2, {{{b, c}, 1}, {{a, c}, -1}, {{a, b}, 1}}));
  SharblyChain two(ctx, 1);
  IntVector d{1, 3};
  two.add({a, b, c}, 1);
  two.add({a, b, d}, -1);
  CHECK(two.boundary().chain().terms().count(PointTuple{b, a}) == 0);
  CHECK(two.boundary().chain().terms().count(PointTuple{a, b}) == 0);
  CHECK_THROWS_AS(u.boundary().boundary().boundary(), PreconditionError);
  auto symbols = to_modular_symbols(u.boundary());
  CHECK(symbols.size() == 3);
}

TEST_CASE("boundary of a boundary vanishes") {
  std::mt19937_64 rng(404);
  for (std::size_t n : {2u, 3u}) {
    GammaContext ctx{n, 1};
    for (int t = 0; t < 25; ++t) {
      SharblyChain x = random_sharbly_chain(rng, ctx, 2, 2, 4);
      CHECK(x.boundary().boundary().empty());
    }
  }
}

TEST_CASE("sharbly norm") {
  GammaContext ctx{2, 11};
  SharblyChain u(ctx, 1);
  CHECK(sharbly_norm(u) == 0);
  u.add({{1, 0}, {0, 1}, {1, 2}}, 1);
  CHECK(sharbly_norm(u) == 2);
  u.add({{1, 0}, {0, 1}, {1, 5}}, 1);
  CHECK(sharbly_norm(u) == 5);
  CHECK(sharbly_norm(reduced_base_cycle(11)) == 1);
}

TEST_CASE("hyperoctahedral relation has zero boundary") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<long> entry(-6, 6);
  for (std::size_t n : {2u, 3u}) {
    GammaContext ctx{n, 1};
    for (int t = 0; t < 30; ++t) {
      PointTuple u = random_sharbly_chain(rng, ctx, 1, 1, 4).terms().begin()->first;
      std::vector<IntVector> w(u.size(), IntVector(n));
      for (auto& p : w)
        do {
          for (std::size_t r = 0; r < n; ++r) p[r] = entry(rng);
        } while (p.is_zero());
      CHECK(hyperoctahedral_relation(u, w, n).boundary(n).empty());
    }
  }
}

TEST_CASE("cycle checks") {
  SharblyChain xi0 = reduced_base_cycle(11);
  CHECK(is_cycle_mod_gamma(xi0));
  SharblyChain bad(GammaContext{2, 11}, 1);
  bad.add({{1, 0}, {0, 1}, {1, 2}}, 1);
  CHECK_THROWS_AS(require_cycle(bad), CycleError);
  CHECK_THROWS_AS(assign_reducing_points(bad), CycleError);
  EquivariantAssignment empty = assign_reducing_points(xi0);
  CHECK(empty.orbits.empty());
  CHECK(one_sharbly_step(xi0, empty) == xi0);
  CycleReduction r = reduce_cycle(xi0);
  CHECK(r.report.verdict == Verdict::Reduced);
  CHECK(r.report.iterations.empty());
}

TEST_CASE("Hecke translates reduce with equivariant audits") {
  for (long level : {11L, 13L}) {
    SharblyChain xi0 = reduced_base_cycle(level);
    for (long m : {2L, 3L, 4L, 5L, 7L}) {
      SharblyChain xi = hecke_translate(xi0, m);
      REQUIRE(is_cycle_mod_gamma(xi));
      CHECK(sharbly_norm(xi) == m);
      EquivariantAssignment a = assign_reducing_points(xi);
      CHECK_FALSE(a.orbits.empty());
      CHECK(verify_assignment(a).empty());
      SharblyChain next = one_sharbly_step(xi, a);
      CHECK(is_cycle_mod_gamma(next));
      CHECK(surviving_old_face_terms(xi, a).empty());
      CHECK(sharbly_norm(next) < sharbly_norm(xi));
      CycleReduction r = reduce_cycle(xi);
      CHECK(r.report.verdict == Verdict::Reduced);
      CHECK(r.report.violations.empty());
      CHECK(sharbly_norm(r.chain) == 1);
    }
  }
}

TEST_CASE("rank three boundary cycles reduce") {
  std::mt19937_64 rng(7);
  GammaContext ctx{3, 7};
  for (int t = 0; t < 3; ++t) {
    SharblyChain xi = random_boundary_cycle(rng, ctx, 4, 3);
    CycleReduction r = reduce_cycle(xi);
    CHECK(r.report.verdict == Verdict::Reduced);
    for (const auto& it : r.report.iterations) {
      CHECK(it.cycle_ok);
      CHECK(it.faces_ok);
    }
  }
}

TEST_CASE("non-equivariant assignment is detected") {
  int detected = 0;
  for (long m : {5L, 7L, 9L, 11L}) {
    SharblyChain xi = hecke_translate(reduced_base_cycle(13), m);
    AssignmentOptions broken;
    broken.break_equivariance = true;
    EquivariantAssignment a = assign_reducing_points(xi, broken);
    if (a.injected.empty()) continue;
    CHECK_FALSE(verify_assignment(a).empty());
    SharblyChain next = one_sharbly_step(xi, a);
    bool caught = !surviving_old_face_terms(xi, a).empty() || !is_cycle_mod_gamma(next);
    CHECK(caught);
    CHECK(reduce_cycle(xi, 50, broken).report.verdict == Verdict::AuditFailed);
    ++detected;
  }
  CHECK(detected > 0);
}
