#include "modsym/congruence.hpp"

#include <algorithm>
#include <numeric>

namespace modsym {

namespace {

std::vector<BigInt> minor_invariant(const PointTuple& t, std::size_t n) {
  std::vector<BigInt> out;
  std::vector<bool> pick(t.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(n), true);
  do {
    std::vector<IntVector> cols;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (pick[i]) cols.push_back(t[i]);
    out.push_back(abs_int(det(from_columns(std::span<const IntVector>(cols)))));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> basis_indices(const PointTuple& t, std::size_t n) {
  std::vector<std::size_t> idx;
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < t.size() && idx.size() < n; ++i) {
    cols.push_back(t[i]);
    if (rank(from_columns(std::span<const IntVector>(cols))) == cols.size()) idx.push_back(i);
    else cols.pop_back();
  }
  if (idx.size() != n) throw DegenerateInputError("tuple does not span Q^n");
  return idx;
}

// Calls visit(gamma, sign) for every gamma in Gamma mapping `from` onto `to`;
// stops when visit returns true.
template <class Visit>
bool search_equivalences(const PointTuple& from, const PointTuple& to, const GammaContext& ctx, Visit visit) {
  const std::size_t n = ctx.n;
  if (from.size() != to.size() || from.empty() || from[0].size() != n) return false;
  std::vector<std::size_t> b = basis_indices(from, n);
  std::vector<IntVector> base;
  for (auto i : b) base.push_back(from[i]);
  IntMatrix m = from_columns(std::span<const IntVector>(base));
  const BigInt d = det(m);
  const IntMatrix adj = adjugate(m);
  std::vector<std::size_t> choice(to.size());
  std::iota(choice.begin(), choice.end(), 0);
  std::vector<std::size_t> image(n);
  std::vector<bool> used(to.size(), false);
  bool done = false;
  auto try_images = [&]() {
    std::vector<IntVector> cols;
    for (auto j : image) cols.push_back(to[j]);
    BigInt dx = det(from_columns(std::span<const IntVector>(cols)));
    if (abs_int(dx) != abs_int(d)) return;
    for (unsigned mask = 0; mask < (1u << n) && !done; ++mask) {
      if ((__builtin_popcount(mask) % 2 == 1) != (dx != d)) continue;
      IntMatrix x(n, n);
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) x(r, c) = ((mask >> c) & 1) ? BigInt(-cols[c][r]) : cols[c][r];
      IntMatrix g = x * adj;
      bool integral = true;
      for (std::size_t r = 0; r < n && integral; ++r)
        for (std::size_t c = 0; c < n && integral; ++c) {
          if (!mpz_divisible_p(g(r, c).get_mpz_t(), d.get_mpz_t())) integral = false;
          else mpz_divexact(g(r, c).get_mpz_t(), g(r, c).get_mpz_t(), d.get_mpz_t());
        }
      if (!integral || !in_gamma(g, ctx)) continue;
      PointTuple img;
      int sign = act_on_tuple(g, from, img);
      if (sign == 0 || img != to) continue;
      done = visit(g, sign);
    }
  };
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (done) return;
    if (k == n) {
      try_images();
      return;
    }
    for (std::size_t j = 0; j < to.size() && !done; ++j) {
      if (used[j]) continue;
      used[j] = true;
      image[k] = j;
      self(self, k + 1);
      used[j] = false;
    }
  };
  rec(rec, 0);
  return done;
}

}  // namespace

bool in_gamma(const IntMatrix& g, const GammaContext& ctx) {
  if (g.rows() != ctx.n || g.cols() != ctx.n) return false;
  if (det(g) != 1) return false;
  for (std::size_t j = 0; j + 1 < ctx.n; ++j)
    if (!mpz_divisible_ui_p(g(ctx.n - 1, j).get_mpz_t(), static_cast<unsigned long>(ctx.level))) return false;
  return true;
}

int act_on_tuple(const IntMatrix& g, const PointTuple& t, PointTuple& out) {
  out.clear();
  for (const auto& p : t) out.push_back(g * p);
  return canonicalize_tuple(out);
}

std::optional<Equivalence> find_equivalence(const PointTuple& from, const PointTuple& to, const GammaContext& ctx) {
  std::optional<Equivalence> found;
  search_equivalences(from, to, ctx, [&](const IntMatrix& g, int sign) {
    found = Equivalence{g, sign};
    return true;
  });
  return found;
}

std::optional<IntMatrix> odd_stabilizer(const PointTuple& t, const GammaContext& ctx) {
  std::optional<IntMatrix> found;
  search_equivalences(t, t, ctx, [&](const IntMatrix& g, int sign) {
    if (sign < 0) found = g;
    return sign < 0;
  });
  return found;
}

std::optional<OrbitMatch> OrbitTable::find(const PointTuple& t) const {
  auto it = buckets_.find(minor_invariant(t, ctx_.n));
  if (it == buckets_.end()) return std::nullopt;
  for (auto r : it->second)
    if (auto e = find_equivalence(reps_[r], t, ctx_)) return OrbitMatch{r, *e};
  return std::nullopt;
}

OrbitMatch OrbitTable::find_or_insert(const PointTuple& t) {
  auto& bucket = buckets_[minor_invariant(t, ctx_.n)];
  for (auto r : bucket)
    if (auto e = find_equivalence(reps_[r], t, ctx_)) return OrbitMatch{r, *e};
  bucket.push_back(reps_.size());
  reps_.push_back(t);
  return OrbitMatch{reps_.size() - 1, Equivalence{IntMatrix::identity(ctx_.n), 1}};
}

PointChain reduce_mod_gamma(const PointChain& chain, const GammaContext& ctx) {
  OrbitTable orbits(ctx);
  std::vector<BigRat> coeff;
  for (const auto& [t, c] : chain.terms()) {
    OrbitMatch m = orbits.find_or_insert(t);
    if (m.rep == coeff.size()) coeff.push_back(0);
    coeff[m.rep] += m.to_member.sign * c;
  }
  PointChain out(ctx.n);
  for (std::size_t r = 0; r < coeff.size(); ++r) {
    if (coeff[r] == 0 || odd_stabilizer(orbits.reps()[r], ctx)) continue;
    out.add(orbits.reps()[r], coeff[r]);
  }
  return out;
}

}  // namespace modsym
