#include "modsym/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_set>

#include "modsym/lll.hpp"

namespace modsym {

Strategy parse_strategy(const std::string& name) {
  if (name == "auto") return Strategy::Auto;
  if (name == "cf") return Strategy::ContinuedFraction;
  if (name == "lll") return Strategy::Lll;
  if (name == "box") return Strategy::Box;
  throw ParseError("unknown strategy '" + name + "' (expected cf, lll or box)");
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Auto: return "auto";
    case Strategy::ContinuedFraction: return "cf";
    case Strategy::Lll: return "lll";
    case Strategy::Box: return "box";
  }
  return "auto";
}

ReducingCertificate make_certificate(const ModularSymbol& m, const IntVector& v) {
  if (!is_primitive(v)) throw InternalError("reducing point " + v.str() + " is not primitive");
  ReducingCertificate c{v, {}, m.det_abs()};
  IntMatrix mat = m.matrix();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    IntMatrix child = mat;
    for (std::size_t r = 0; r < m.dim(); ++r) child(r, i) = v[r];
    c.child_dets.push_back(abs_int(det(child)));
    if (c.child_dets.back() >= c.parent_det)
      throw InternalError("point " + v.str() + " does not reduce " + m.str());
  }
  return c;
}

bool verify_certificate(const ModularSymbol& m, const ReducingCertificate& c) {
  if (c.parent_det != m.det_abs() || c.child_dets.size() != m.dim() || !is_primitive(c.v)) return false;
  IntMatrix mat = m.matrix();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    IntMatrix child = mat;
    for (std::size_t r = 0; r < m.dim(); ++r) child(r, i) = c.v[r];
    BigInt d = abs_int(det(child));
    if (d != c.child_dets[i] || d >= c.parent_det) return false;
  }
  return true;
}

namespace {

using i128 = __int128;

bool fits_i64(const BigInt& x) { return mpz_sizeinbase(x.get_mpz_t(), 2) <= 62; }

// Collects reducing-point candidates and keeps the best under the order
// (max child det, then lexicographic v). Child determinants of m_i(v) are
// the entries of adj(m) v. Machine-word arithmetic is used when every
// quantity fits; otherwise exact integers.
class CandidatePool {
 public:
  CandidatePool(const IntMatrix& adj, const BigInt& d) : adj_(adj), d_(d), n_(adj.rows()) {
    small_ = fits_i64(d);
    for (std::size_t i = 0; small_ && i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) small_ = small_ && fits_i64(adj(i, j));
    if (small_) {
      adj64_.resize(n_ * n_);
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) adj64_[i * n_ + j] = adj(i, j).get_si();
      d64_ = d.get_si();
    }
  }

  bool small() const { return small_; }

  void consider(std::vector<int64_t> v) {
    if (!small_) {
      IntVector big(n_);
      for (std::size_t i = 0; i < n_; ++i) big[i] = static_cast<long>(v[i]);
      consider(std::move(big));
      return;
    }
    int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
    if (g == 0) return;
    std::size_t lead = 0;
    while (v[lead] == 0) ++lead;
    if (v[lead] < 0) g = -g;
    for (auto& x : v) x /= g;
    i128 worst = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      i128 acc = 0;
      for (std::size_t j = 0; j < n_; ++j) acc += i128(adj64_[i * n_ + j]) * v[j];
      if (acc < 0) acc = -acc;
      if (acc >= d64_) return;
      if (acc > worst) worst = acc;
    }
    if (have_small_ && (worst > best_worst64_ || (worst == best_worst64_ && !(v < best64_)))) return;
    have_small_ = true;
    best_worst64_ = worst;
    best64_ = std::move(v);
  }

  void consider(IntVector v) {
    if (v.is_zero()) return;
    bool word = small_;
    for (std::size_t i = 0; word && i < n_; ++i) word = fits_i64(v[i]);
    if (word) {
      std::vector<int64_t> w(n_);
      for (std::size_t i = 0; i < n_; ++i) w[i] = v[i].get_si();
      consider(std::move(w));
      return;
    }
    v = primitive_part(v);
    IntVector s = adj_ * v;
    BigInt worst = 0;
    for (const auto& x : s) {
      BigInt a = abs_int(x);
      if (a >= d_) return;
      if (a > worst) worst = a;
    }
    if (have_big_ && (worst > best_worst_ || (worst == best_worst_ && !(v < best_)))) return;
    have_big_ = true;
    best_worst_ = worst;
    best_ = std::move(v);
  }

  std::optional<IntVector> best() const {
    std::optional<IntVector> small_best, big_best;
    BigInt small_worst;
    if (have_small_) {
      IntVector v(n_);
      for (std::size_t i = 0; i < n_; ++i) v[i] = static_cast<long>(best64_[i]);
      small_best = std::move(v);
      small_worst = static_cast<long>(best_worst64_);
    }
    if (!have_big_) return small_best;
    if (!have_small_) return best_;
    if (small_worst != best_worst_) return small_worst < best_worst_ ? small_best : best_;
    return *small_best < best_ ? small_best : best_;
  }

  bool empty() const { return !have_small_ && !have_big_; }

 private:
  const IntMatrix& adj_;
  BigInt d_;
  std::size_t n_;
  bool small_ = false;
  std::vector<int64_t> adj64_;
  int64_t d64_ = 0;
  bool have_small_ = false, have_big_ = false;
  i128 best_worst64_ = 0;
  std::vector<int64_t> best64_;
  BigInt best_worst_;
  IntVector best_;
};

// Floating-point LLL on integer columns, used only to propose candidates.
// Returns the unimodular transform, or nullopt when a machine word would
// overflow or the iteration cap is reached.
std::optional<std::vector<std::vector<int64_t>>> approximate_lll_transform(const IntMatrix& basis) {
  const std::size_t n = basis.cols(), dim = basis.rows();
  std::vector<std::vector<int64_t>> b(n, std::vector<int64_t>(dim)), u(n, std::vector<int64_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    u[j][j] = 1;
    for (std::size_t r = 0; r < dim; ++r) {
      if (mpz_sizeinbase(basis(r, j).get_mpz_t(), 2) > 40) return std::nullopt;
      b[j][r] = basis(r, j).get_si();
    }
  }
  std::vector<std::vector<double>> mu(n, std::vector<double>(n, 0.0));
  std::vector<double> norm(n, 0.0);
  auto gram_schmidt = [&]() {
    std::vector<std::vector<double>> star(n, std::vector<double>(dim));
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t r = 0; r < dim; ++r) star[k][r] = static_cast<double>(b[k][r]);
      for (std::size_t j = 0; j < k; ++j) {
        double dotp = 0;
        for (std::size_t r = 0; r < dim; ++r) dotp += static_cast<double>(b[k][r]) * star[j][r];
        mu[k][j] = norm[j] > 0 ? dotp / norm[j] : 0.0;
        for (std::size_t r = 0; r < dim; ++r) star[k][r] -= mu[k][j] * star[j][r];
      }
      norm[k] = 0;
      for (std::size_t r = 0; r < dim; ++r) norm[k] += star[k][r] * star[k][r];
    }
  };
  auto axpy = [](std::vector<int64_t>& x, const std::vector<int64_t>& y, int64_t q) {
    for (std::size_t r = 0; r < x.size(); ++r) {
      int64_t t;
      if (__builtin_mul_overflow(q, y[r], &t) || __builtin_sub_overflow(x[r], t, &x[r])) return false;
    }
    return true;
  };
  gram_schmidt();
  std::size_t k = 1;
  for (int iter = 0; k < n; ++iter) {
    if (iter > 2000) return std::nullopt;
    for (std::size_t j = k; j-- > 0;) {
      double q = std::nearbyint(mu[k][j]);
      if (q == 0) continue;
      if (std::abs(q) > 1e15) return std::nullopt;
      int64_t qi = static_cast<int64_t>(q);
      if (!axpy(b[k], b[j], qi) || !axpy(u[k], u[j], qi)) return std::nullopt;
      gram_schmidt();
    }
    if (norm[k] < (0.75 - mu[k][k - 1] * mu[k][k - 1]) * norm[k - 1]) {
      std::swap(b[k], b[k - 1]);
      std::swap(u[k], u[k - 1]);
      gram_schmidt();
      if (k > 1) --k;
    } else {
      ++k;
    }
  }
  return u;
}

IntVector continued_fraction_point(const ModularSymbol& m) {
  const IntVector& a = m.column(0);
  const IntVector& b = m.column(1);
  BigInt g, x, y;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a[0].get_mpz_t(), a[1].get_mpz_t());
  // gamma = [[x, y], [-a1, a0]] sends a to e1.
  BigInt bp = x * b[0] + y * b[1];
  BigInt dp = a[0] * b[1] - a[1] * b[0];
  if (dp < 0) {
    bp = -bp;
    dp = -dp;
  }
  // Convergents of bp/dp; keep the last two.
  BigInt p_prev = 1, q_prev = 0, p = floor_div(bp, dp), q = 1;
  BigInt num = dp, den = bp - p * dp;
  while (den != 0) {
    BigInt t = floor_div(num, den);
    BigInt r = num - t * den;
    BigInt p_next = t * p + p_prev, q_next = t * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    num = den;
    den = r;
  }
  // gamma^{-1} = [[a0, -y], [a1, x]]
  IntVector v(std::vector<BigInt>{a[0] * p_prev - y * q_prev, a[1] * p_prev + x * q_prev});
  return primitive_part(v);
}

void rounding_candidates(const ModularSymbol& m, CandidatePool& pool) {
  const std::size_t n = m.dim();
  static const int64_t sixths[4] = {0, 3, 2, 4};
  bool word = true;
  for (const auto& c : m.columns())
    for (const auto& x : c) word = word && mpz_sizeinbase(x.get_mpz_t(), 2) <= 56;
  std::vector<int> idx(n, 0);
  while (true) {
    std::size_t j = 0;
    while (j < n && idx[j] == 3) idx[j++] = 0;
    if (j == n) break;
    ++idx[j];
    if (word) {
      // round(a / 6) with halves rounded up is floor((a + 3) / 6)
      std::vector<int64_t> v(n, 0);
      for (std::size_t r = 0; r < n; ++r) {
        int64_t acc = 3;
        for (std::size_t k = 0; k < n; ++k) acc += sixths[idx[k]] * m.column(k)[r].get_si();
        v[r] = acc >= 0 ? acc / 6 : -((-acc + 5) / 6);
      }
      pool.consider(std::move(v));
      continue;
    }
    IntVector acc(n);
    for (std::size_t k = 0; k < n; ++k)
      if (idx[k]) acc += BigInt(sixths[idx[k]]) * m.column(k);
    IntVector v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = round_nearest(make_rat(acc[r], 6));
    pool.consider(std::move(v));
  }
}

void lll_candidates(const IntMatrix& adj, CandidatePool& pool) {
  const std::size_t n = adj.cols();
  if (auto u = approximate_lll_transform(adj)) {
    const auto& cols = *u;
    for (std::size_t j = 0; j < n; ++j) {
      pool.consider(cols[j]);
      for (std::size_t k = j + 1; k < n; ++k) {
        std::vector<int64_t> plus(n), minus(n);
        bool ok = true;
        for (std::size_t r = 0; r < n; ++r) {
          ok = ok && !__builtin_add_overflow(cols[j][r], cols[k][r], &plus[r]) &&
               !__builtin_sub_overflow(cols[j][r], cols[k][r], &minus[r]);
        }
        if (!ok) continue;
        pool.consider(std::move(plus));
        pool.consider(std::move(minus));
      }
    }
    if (!pool.empty()) return;
  }
  IntMatrix u = lll_reduce(adj).transform;
  std::vector<IntVector> cols = columns_of(u);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    pool.consider(cols[j]);
    for (std::size_t k = j + 1; k < cols.size(); ++k) {
      pool.consider(cols[j] + cols[k]);
      pool.consider(cols[j] - cols[k]);
    }
  }
}

// Every nonzero element s of the group adj(m) Z^n mod D, taken with centered
// representatives, yields the reducing point v = m s / D.
bool parallelepiped_search(const ModularSymbol& m, const IntMatrix& adj, CandidatePool& pool) {
  if (m.det_abs() > kBoxEnumerationLimit) return false;
  const std::size_t n = m.dim();
  const int64_t d = m.det_abs().get_si();
  auto centered = [d](int64_t x) {
    x %= d;
    if (x < 0) x += d;
    if (2 * x > d) x -= d;
    return x;
  };
  std::vector<std::vector<int64_t>> gens;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<int64_t> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = centered(BigInt(adj(i, j) % m.det_abs()).get_si());
    gens.push_back(std::move(g));
  }
  struct VecHash {
    std::size_t operator()(const std::vector<int64_t>& v) const {
      std::size_t h = 1469598103934665603ULL;
      for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL;
      return h;
    }
  };
  std::unordered_set<std::vector<int64_t>, VecHash> seen;
  std::vector<std::vector<int64_t>> queue{std::vector<int64_t>(n, 0)};
  seen.insert(queue[0]);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : gens) {
      std::vector<int64_t> next(n);
      for (std::size_t i = 0; i < n; ++i) next[i] = centered(queue[head][i] + g[i]);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  int64_t best_worst = d;
  for (const auto& s : queue) {
    int64_t w = 0;
    for (auto x : s) w = std::max<int64_t>(w, x < 0 ? -x : x);
    if (w > 0 && w < best_worst) best_worst = w;
  }
  IntMatrix mat = m.matrix();
  for (const auto& s : queue) {
    int64_t w = 0;
    for (auto x : s) w = std::max<int64_t>(w, x < 0 ? -x : x);
    if (w != best_worst) continue;
    IntVector sv(n);
    for (std::size_t i = 0; i < n; ++i) sv[i] = static_cast<long>(s[i]);
    IntVector v = mat * sv;
    for (std::size_t i = 0; i < n; ++i) v[i] /= m.det_abs();
    pool.consider(std::move(v));
  }
  return true;
}

}  // namespace

ReducingCertificate find_reducing_point(const ModularSymbol& m, Strategy strategy) {
  if (m.det_abs() <= 1) throw PreconditionError("reducing point requested for unimodular symbol " + m.str());
  const std::size_t n = m.dim();
  if (n == 1) throw PreconditionError("a 1x1 symbol has no reducing point");
  if (strategy == Strategy::ContinuedFraction && n != 2) strategy = Strategy::Auto;
  if (strategy == Strategy::Auto && n == 2) strategy = Strategy::ContinuedFraction;

  if (strategy == Strategy::ContinuedFraction) return make_certificate(m, continued_fraction_point(m));

  IntMatrix adj = adjugate(m.matrix());
  CandidatePool pool(adj, m.det_abs());
  if (strategy == Strategy::Box) {
    if (!parallelepiped_search(m, adj, pool)) lll_candidates(adj, pool);
  } else {
    if (strategy == Strategy::Auto) rounding_candidates(m, pool);
    lll_candidates(adj, pool);
    if (pool.empty()) parallelepiped_search(m, adj, pool);
  }
  std::optional<IntVector> best = pool.best();
  if (!best) throw InternalError("no reducing point found for " + m.str());
  return make_certificate(m, *best);
}

const ReducingCertificate& Reducer::certificate_for(const ModularSymbol& s) {
  auto it = points_.find(s);
  if (it != points_.end()) return trace_.steps[it->second].certificate;
  trace_.steps.push_back({s, find_reducing_point(s, strategy_)});
  points_.emplace(s, trace_.steps.size() - 1);
  return trace_.steps.back().certificate;
}

namespace {

// Children have strictly smaller |det| than their parent, so expanding in
// decreasing |det| order visits each symbol once with its final coefficient.
template <typename PointFor>
SymbolChain expand_in_det_order(const SymbolChain& c, PointFor&& point_for) {
  struct ByDetDesc {
    bool operator()(const ModularSymbol& a, const ModularSymbol& b) const {
      if (a.det_abs() != b.det_abs()) return a.det_abs() > b.det_abs();
      return a < b;
    }
  };
  std::map<ModularSymbol, BigInt, ByDetDesc> pending;
  SymbolChain out;
  for (const auto& [s, k] : c.terms()) {
    if (s.is_unimodular()) out.add(s, k); else pending.emplace(s, k);
  }
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const ModularSymbol& s = node.key();
    const BigInt& k = node.mapped();
    if (k == 0) continue;
    const SymbolChain children = cocycle_expand(s, point_for(s));
    for (const auto& [child, ck] : children.terms()) {
      if (child.is_unimodular()) {
        out.add(child, ck * k);
      } else {
        auto [it, inserted] = pending.try_emplace(child, 0);
        it->second += ck * k;
      }
    }
  }
  return out;
}

}  // namespace

SymbolChain Reducer::reduce(const SymbolChain& c) {
  return expand_in_det_order(c, [this](const ModularSymbol& s) -> const IntVector& { return certificate_for(s).v; });
}

SymbolChain Reducer::reduce(const ModularSymbol& s) { return reduce(SymbolChain(s)); }

ReductionResult reduce_to_unimodular(const ModularSymbol& m, Strategy strategy) {
  Reducer r(strategy);
  SymbolChain chain = r.reduce(m);
  return {std::move(chain), r.trace()};
}

SymbolChain replay(const SymbolChain& root, const ReductionTrace& trace) {
  std::map<ModularSymbol, const ReducingCertificate*> steps;
  for (const auto& s : trace.steps) steps.emplace(s.parent.with_sign(1), &s.certificate);
  return expand_in_det_order(root, [&steps](const ModularSymbol& s) -> const IntVector& {
    auto step = steps.find(s);
    if (step == steps.end()) throw InternalError("trace has no step for " + s.str());
    if (!verify_certificate(s, *step->second)) throw InternalError("trace certificate fails for " + s.str());
    return step->second->v;
  });
}

}  // namespace modsym
