#include "modsym/sharbly.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "modsym/manin.hpp"
#include "modsym/symbol.hpp"

namespace modsym {

namespace {

std::string tuple_str(const PointTuple& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + t[i].str();
  return s + "]";
}

PointTuple omit(const PointTuple& t, std::size_t i) {
  PointTuple f;
  for (std::size_t j = 0; j < t.size(); ++j)
    if (j != i) f.push_back(t[j]);
  return f;
}

BigInt abs_det(const PointTuple& t) { return abs_int(det(from_columns(std::span<const IntVector>(t)))); }

bool is_reducing_point(const PointTuple& face, const IntVector& w) {
  BigInt d = abs_det(face);
  if (w.is_zero()) return false;
  for (std::size_t i = 0; i < face.size(); ++i) {
    PointTuple c = face;
    c[i] = w;
    if (abs_det(c) >= d) return false;
  }
  return true;
}

IntVector point_for(const PointTuple& face, Strategy strategy) {
  auto s = ModularSymbol::normalize(std::span<const IntVector>(face));
  if (!s) throw InternalError("degenerate face received a reducing point");
  return primitive_part(find_reducing_point(*s, strategy).v);
}

std::vector<WeightedPoint> transport(const IntMatrix& g, const std::vector<WeightedPoint>& pts) {
  std::vector<WeightedPoint> out;
  for (const auto& p : pts) out.push_back({primitive_part(g * p.point), p.weight});
  return out;
}

}  // namespace

SharblyChain::SharblyChain(GammaContext ctx, std::size_t k, PointChain chain) : ctx_(ctx), k_(k), chain_(ctx.n) {
  for (const auto& [t, c] : chain.terms()) add(t, c);
}

void SharblyChain::add(PointTuple points, const BigRat& coefficient) {
  if (points.size() != ctx_.n + k_) throw DimensionError("sharbly must have n + k points");
  for (const auto& p : points)
    if (p.size() != ctx_.n) throw DimensionError("sharbly points must lie in Z^n");
  chain_.add(std::move(points), coefficient);
}

SharblyChain SharblyChain::boundary() const {
  if (k_ == 0) throw PreconditionError("0-sharblies map to modular symbols, not to a lower sharbly degree");
  return SharblyChain(ctx_, k_ - 1, chain_.boundary(ctx_.n));
}

SharblyChain SharblyChain::mod_gamma() const { return SharblyChain(ctx_, k_, reduce_mod_gamma(chain_, ctx_)); }

std::map<ModularSymbol, BigRat> to_modular_symbols(const SharblyChain& c) {
  if (c.k() != 0) throw PreconditionError("only 0-sharblies map to modular symbols");
  std::map<ModularSymbol, BigRat> out;
  for (const auto& [t, k] : c.terms()) {
    auto s = ModularSymbol::normalize(std::span<const IntVector>(t));
    if (!s) continue;
    BigRat& slot = out[s->with_sign(1)];
    slot += s->sign() * k;
    if (slot == 0) out.erase(s->with_sign(1));
  }
  return out;
}

BigInt sharbly_norm(const SharblyChain& c) {
  BigInt best = 0;
  const std::size_t n = c.context().n;
  for (const auto& [t, k] : c.terms()) {
    std::vector<bool> pick(t.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(n), true);
    do {
      PointTuple sub;
      for (std::size_t i = 0; i < t.size(); ++i)
        if (pick[i]) sub.push_back(t[i]);
      best = std::max(best, abs_det(sub));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return best;
}

PointChain unmatched_faces(const SharblyChain& c) { return reduce_mod_gamma(c.boundary().chain(), c.context()); }

bool is_cycle_mod_gamma(const SharblyChain& c) { return unmatched_faces(c).empty(); }

void require_cycle(const SharblyChain& c) {
  PointChain u = unmatched_faces(c);
  if (!u.empty()) throw CycleError("not a cycle mod Gamma; unmatched faces: " + u.str());
}

EquivariantAssignment assign_reducing_points(const SharblyChain& xi, const AssignmentOptions& options) {
  require_cycle(xi);
  const GammaContext& ctx = xi.context();
  EquivariantAssignment a{ctx, {}, {}, {}};
  std::set<PointTuple, TupleLess> faces;
  for (const auto& [u, c] : xi.terms())
    for (std::size_t i = 0; i < u.size(); ++i) {
      PointTuple f = omit(u, i);
      if (abs_det(f) > 1) faces.insert(std::move(f));
    }
  OrbitTable orbits(ctx);
  for (const auto& f : faces) {
    OrbitMatch m = orbits.find_or_insert(f);
    if (m.rep == a.orbits.size()) {
      AssignedOrbit o{f, {}, odd_stabilizer(f, ctx)};
      IntVector w = point_for(f, options.strategy);
      if (o.odd_stabilizer) {
        IntVector w2 = primitive_part(*o.odd_stabilizer * w);
        if (w2 == w) o.points = {{w, 1}};
        else o.points = {{w, BigRat(1, 2)}, {w2, BigRat(1, 2)}};
      } else {
        o.points = {{w, 1}};
      }
      a.orbits.push_back(std::move(o));
    }
    AssignedFace face{m.rep, m.to_member, transport(m.to_member.gamma, a.orbits[m.rep].points)};
    if (options.break_equivariance && a.injected.empty() && f != a.orbits[m.rep].rep) {
      IntVector own = point_for(f, options.strategy);
      bool differs = std::none_of(face.points.begin(), face.points.end(), [&](const WeightedPoint& p) { return p.point == own; });
      if (differs) {
        face.points = {{own, 1}};
        a.injected.push_back(tuple_str(f));
      }
    }
    a.faces.emplace(f, std::move(face));
  }
  return a;
}

std::vector<std::string> verify_assignment(const EquivariantAssignment& a, Strategy) {
  std::vector<std::string> bad;
  for (const auto& o : a.orbits)
    for (const auto& p : o.points)
      if (!is_reducing_point(o.rep, p.point)) bad.push_back("invalid reducing point for " + tuple_str(o.rep));
  for (const auto& [f, face] : a.faces) {
    const AssignedOrbit& o = a.orbits[face.orbit];
    PointTuple img;
    int sign = act_on_tuple(face.transport.gamma, o.rep, img);
    bool ok = in_gamma(face.transport.gamma, a.ctx) && img == f && sign == face.transport.sign;
    std::vector<WeightedPoint> expect = transport(face.transport.gamma, o.points);
    ok = ok && expect.size() == face.points.size();
    for (std::size_t i = 0; ok && i < expect.size(); ++i)
      ok = expect[i].point == face.points[i].point && expect[i].weight == face.points[i].weight;
    for (const auto& p : face.points) ok = ok && is_reducing_point(f, p.point);
    if (!ok) bad.push_back("face " + tuple_str(f) + " breaks w' = gamma w");
  }
  return bad;
}

PointChain hyperoctahedral_relation(const PointTuple& u, const std::vector<IntVector>& w, std::size_t n) {
  if (w.size() != u.size()) throw DimensionError("one point per face is required");
  PointChain out(n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << u.size()); ++mask) {
    PointTuple t = u;
    for (std::size_t i = 0; i < u.size(); ++i)
      if ((mask >> i) & 1) t[i] = w[i];
    out.add(std::move(t), __builtin_popcountll(mask) % 2 ? -1 : 1);
  }
  return out;
}

namespace {

// Eq. (4) expansion of every sharbly; with `old_faces_only` just the #I = 1
// terms whose slot has its own point, i.e. those carrying an old face.
PointChain expand_step(const SharblyChain& xi, const EquivariantAssignment& a, bool old_faces_only) {
  const std::size_t l = xi.context().n + 1;
  if (xi.k() != 1) throw PreconditionError("one_sharbly_step acts on 1-sharbly chains");
  PointChain raw(xi.context().n);
  for (const auto& [u, c] : xi.terms()) {
    std::vector<const std::vector<WeightedPoint>*> pts(l, nullptr);
    std::vector<bool> own(l, false);
    std::optional<std::size_t> first;
    for (std::size_t i = 0; i < l; ++i) {
      PointTuple f = omit(u, i);
      if (abs_det(f) <= 1) continue;
      auto it = a.faces.find(f);
      if (it == a.faces.end()) throw PreconditionError("assignment does not cover face " + tuple_str(f));
      pts[i] = &it->second.points;
      own[i] = true;
      if (!first) first = i;
    }
    if (!first) {
      if (!old_faces_only) raw.add(u, c);
      continue;
    }
    for (auto& p : pts)
      if (!p) p = pts[*first];
    for (std::size_t mask = 1; mask < (std::size_t{1} << l); ++mask) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < l; ++i)
        if ((mask >> i) & 1) idx.push_back(i);
      if (old_faces_only && (idx.size() != 1 || !own[idx[0]])) continue;
      const BigRat sign = idx.size() % 2 ? c : BigRat(-c);
      std::vector<std::size_t> pick(idx.size(), 0);
      for (;;) {
        PointTuple t = u;
        BigRat wt = sign;
        for (std::size_t j = 0; j < idx.size(); ++j) {
          const WeightedPoint& p = (*pts[idx[j]])[pick[j]];
          t[idx[j]] = p.point;
          wt *= p.weight;
        }
        raw.add(std::move(t), wt);
        std::size_t j = 0;
        while (j < idx.size() && ++pick[j] == pts[idx[j]]->size()) pick[j++] = 0;
        if (j == idx.size()) break;
      }
    }
  }
  return reduce_mod_gamma(raw, xi.context());
}

}  // namespace

SharblyChain one_sharbly_step(const SharblyChain& xi, const EquivariantAssignment& a) {
  return SharblyChain(xi.context(), 1, expand_step(xi, a, false));
}

PointChain surviving_old_face_terms(const SharblyChain& xi, const EquivariantAssignment& a) {
  return expand_step(xi, a, true);
}

std::vector<std::string> recurring_assigned_faces(const SharblyChain& out, const EquivariantAssignment& a) {
  OrbitTable assigned(a.ctx);
  for (const auto& o : a.orbits) assigned.find_or_insert(o.rep);
  std::vector<std::string> bad;
  for (const auto& [u, c] : out.terms())
    for (std::size_t i = 0; i < u.size(); ++i) {
      PointTuple f = omit(u, i);
      if (abs_det(f) > 1 && assigned.find(f)) bad.push_back("sharbly " + tuple_str(u) + " keeps assigned face " + tuple_str(f));
    }
  return bad;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Reduced: return "reduced";
    case Verdict::Stalled: return "stalled";
    case Verdict::Oscillating: return "oscillating";
    case Verdict::AuditFailed: return "audit_failed";
  }
  return "unknown";
}

CycleReduction reduce_cycle(const SharblyChain& xi, std::size_t max_iter, const AssignmentOptions& options) {
  if (xi.k() != 1) throw PreconditionError("reduce_cycle acts on 1-sharbly chains");
  if (xi.context().n < 2 || xi.context().n > 4) throw DimensionError("reduce_cycle supports n in {2, 3, 4}");
  require_cycle(xi);
  CycleReduction r{xi.mod_gamma(), {}};
  ConvergenceReport& rep = r.report;
  rep.initial_norm = sharbly_norm(r.chain);
  rep.initial_support = r.chain.size();
  std::vector<PointChain> seen{r.chain.chain()};
  BigInt norm = rep.initial_norm;
  bool increased = false;
  std::optional<Verdict> verdict;
  for (std::size_t it = 1; !verdict && norm > 1 && it <= max_iter; ++it) {
    EquivariantAssignment a = assign_reducing_points(r.chain, options);
    SharblyChain next = one_sharbly_step(r.chain, a);
    IterationRecord rec{it, sharbly_norm(next), next.size(), a.orbits.size(), false, is_cycle_mod_gamma(next), true, 0};
    rec.decreased = rec.norm < norm;
    PointChain left = surviving_old_face_terms(r.chain, a);
    rec.faces_ok = left.empty();
    rec.recurring_faces = recurring_assigned_faces(next, a).size();
    if (!rec.decreased) {
      rep.violations.push_back("iteration " + std::to_string(it) + ": norm " + norm.get_str() + " -> " + rec.norm.get_str());
      increased = increased || rec.norm > norm;
    }
    if (!rec.cycle_ok) rep.violations.push_back("iteration " + std::to_string(it) + ": output is not a cycle mod Gamma");
    if (!rec.faces_ok) rep.violations.push_back("iteration " + std::to_string(it) + ": old-face terms survive: " + left.str());
    if (!rec.cycle_ok || !rec.faces_ok) verdict = Verdict::AuditFailed;
    norm = rec.norm;
    rep.iterations.push_back(rec);
    r.chain = std::move(next);
    if (!verdict && std::find(seen.begin(), seen.end(), r.chain.chain()) != seen.end()) verdict = Verdict::Oscillating;
    seen.push_back(r.chain.chain());
  }
  if (verdict) rep.verdict = *verdict;
  else if (norm <= 1) rep.verdict = Verdict::Reduced;
  else rep.verdict = increased ? Verdict::Oscillating : Verdict::Stalled;
  return r;
}

SharblyChain reduced_base_cycle(long level) {
  GammaContext ctx{2, level};
  P1List p1(level);
  SharblyChain xi(ctx, 1);
  for (std::size_t i = 0; i < p1.size(); ++i) {
    IntMatrix g = p1.lift(i);
    xi.add({g * IntVector{1, 0}, g * IntVector{0, 1}, g * IntVector{1, 1}}, 1);
  }
  return xi.mod_gamma();
}

SharblyChain hecke_translate(const SharblyChain& xi, long m) {
  const GammaContext& ctx = xi.context();
  if (ctx.n != 2) throw DimensionError("Hecke translates of sharbly cycles are implemented for n = 2");
  if (m < 1 || std::gcd(m, ctx.level) != 1) throw PreconditionError("Hecke translate needs m >= 1 coprime to the level");
  std::vector<IntMatrix> alphas;
  for (long a = 1; a <= m; ++a) {
    if (m % a) continue;
    long d = m / a;
    for (long b = 0; b < d; ++b) {
      IntMatrix g(2, 2);
      g(0, 0) = a;
      g(0, 1) = b;
      g(1, 1) = d;
      alphas.push_back(g);
    }
  }
  PointChain raw(2);
  for (const auto& [u, c] : xi.terms())
    for (const auto& g : alphas) {
      PointTuple t;
      for (const auto& p : u) t.push_back(g * p);
      raw.add(std::move(t), c);
    }
  return SharblyChain(ctx, xi.k(), reduce_mod_gamma(raw, ctx));
}

SharblyChain random_sharbly_chain(std::mt19937_64& rng, const GammaContext& ctx, std::size_t k, std::size_t terms,
                                  long entry_bound) {
  std::uniform_int_distribution<long> entry(-entry_bound, entry_bound);
  std::uniform_int_distribution<long> coeff(1, 3);
  SharblyChain out(ctx, k);
  while (out.size() < terms) {
    PointTuple t(ctx.n + k, IntVector(ctx.n));
    bool zero = false;
    for (auto& p : t) {
      for (std::size_t r = 0; r < ctx.n; ++r) p[r] = entry(rng);
      zero = zero || p.is_zero();
    }
    if (zero || tuple_rank(t) < ctx.n) continue;
    long c = coeff(rng) * (rng() % 2 ? 1 : -1);
    out.add(std::move(t), c);
  }
  return out;
}

SharblyChain random_boundary_cycle(std::mt19937_64& rng, const GammaContext& ctx, std::size_t terms, long entry_bound) {
  for (;;) {
    SharblyChain c = random_sharbly_chain(rng, ctx, 2, terms, entry_bound).boundary().mod_gamma();
    if (!c.empty()) return c;
  }
}

}  // namespace modsym
