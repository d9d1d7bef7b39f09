#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "modsym/hecke.hpp"
#include "modsym/sharbly.hpp"
#include "modsym/symplectic.hpp"
#include "unit/oracles.hpp"

using namespace modsym;

namespace {

constexpr int kMatricesPerDim = 500;
constexpr long kEntryBound = 99;
constexpr double kReductionBudget = 60.0;
constexpr int kOracleSymbols = 200;
constexpr long kDimensionLevels = 100;
constexpr double kHeckeBudget = 30.0;
constexpr long kCommutationLevels = 50;
constexpr int kSpSymbols = 200;
constexpr long kSpMaxDet = 16;
constexpr double kSpBudget = 60.0;
constexpr int kTwoSharblies = 200;
constexpr int kRelationSamples = 100;
constexpr std::size_t kCorpusN2PerLevel = 35;
constexpr std::size_t kCorpusN3 = 30;
constexpr std::size_t kSharblyMaxIter = 50;
constexpr double kReducedFraction = 0.95;
constexpr double kDecreasingFraction = 0.95;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x, int digits = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << x;
  return os.str();
}

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome criterion1() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(1001);
  long steps = 0, failures = 0;
  for (std::size_t n = 2; n <= 4; ++n)
    for (int t = 0; t < kMatricesPerDim; ++t) {
      IntMatrix m;
      do m = oracle::random_matrix(rng, n, n, -kEntryBound, kEntryBound);
      while (det(m) == 0);
      auto s = ModularSymbol::from_matrix(m);
      ReductionResult r = reduce_to_unimodular(*s);
      if (!r.chain.all_unimodular()) ++failures;
      for (const auto& st : r.trace.steps) {
        ++steps;
        bool strict = verify_certificate(st.parent, st.certificate);
        for (const auto& d : st.certificate.child_dets) strict = strict && abs_int(d) < st.parent.det_abs();
        if (!strict) ++failures;
      }
    }
  double secs = seconds_since(t0);
  return {failures == 0 && secs < kReductionBudget,
          std::to_string(3 * kMatricesPerDim) + " matrices, " + std::to_string(steps) + " steps verified, " +
              std::to_string(failures) + " failures, " + fmt(secs) + " s (budget " + fmt(kReductionBudget, 0) + " s)"};
}

// {oo, x} as a sum of unimodular symbols along the convergents of x.
void convergent_path(SymbolChain& acc, BigInt p, BigInt q, const BigInt& scale) {
  if (q == 0) return;
  if (q < 0) {
    p = -p;
    q = -q;
  }
  BigInt pm = 1, qm = 0, pk, qk;
  BigInt a = p, b = q;
  bool first = true;
  while (b != 0) {
    BigInt c = floor_div(a, b);
    BigInt r = a - c * b;
    if (first) {
      pk = c;
      qk = 1;
      first = false;
    } else {
      BigInt np = c * pk + pm, nq = c * qk + qm;
      pm = pk;
      qm = qk;
      pk = np;
      qk = nq;
    }
    std::vector<IntVector> cols{IntVector(std::vector<BigInt>{pm, qm}), IntVector(std::vector<BigInt>{pk, qk})};
    acc.add_columns(std::span<const IntVector>(cols), scale);
    a = b;
    b = r;
  }
}

Outcome criterion2() {
  std::mt19937_64 rng(2002);
  std::vector<ManinSpace> spaces{build_manin_space(11), build_manin_space(13)};
  int mismatches = 0, compared = 0;
  for (int t = 0; t < kOracleSymbols; ++t) {
    IntMatrix m;
    do m = oracle::random_matrix(rng, 2, 2, -kEntryBound, kEntryBound);
    while (det(m) == 0);
    IntVector a = column(m, 0), b = column(m, 1);
    auto s = ModularSymbol::from_matrix(m);
    SymbolChain reduced = reduce_to_unimodular(*s).chain;
    SymbolChain cf;
    convergent_path(cf, b[0], b[1], 1);
    convergent_path(cf, a[0], a[1], -1);
    for (const auto& space : spaces) {
      ++compared;
      if (space.project(reduced) != space.project(cf)) ++mismatches;
    }
  }
  return {mismatches == 0, std::to_string(compared) + " projections compared (N = 11, 13), " + std::to_string(mismatches) + " mismatches"};
}

Outcome criterion3() {
  int bad = 0;
  for (long n = 1; n <= kDimensionLevels; ++n) {
    long expect = 2 * oracle::genus_x0(n) + oracle::cusp_count(n) - 1;
    if (static_cast<long>(build_manin_space(n).dimension()) != expect) ++bad;
  }
  return {bad == 0, "N = 1.." + std::to_string(kDimensionLevels) + ", " + std::to_string(bad) + " mismatches against the genus/cusp oracle"};
}

struct Curve {
  long level;
  long a1, a2, a3, a4, a6;
};

long frobenius_trace(const Curve& e, long p) {
  long count = 1;
  auto mod = [p](long x) { return ((x % p) + p) % p; };
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y)
      if (mod(y * y + e.a1 * x * y + e.a3 * y - (x * x * x + e.a2 * x * x + e.a4 * x + e.a6)) == 0) ++count;
  return p + 1 - count;
}

Outcome criterion4() {
  auto t0 = Clock::now();
  int bad = 0, checked = 0;
  ManinSpace s11 = build_manin_space(11);
  bool fixed = eigen_report(hecke_matrix(s11, 2).matrix).factors.str() == "(x - 3)(x + 2)^2" &&
               eigen_report(hecke_matrix(s11, 3).matrix).factors.str() == "(x - 4)(x + 1)^2";
  for (const Curve& e : {Curve{11, 0, -1, 1, -10, -20}, Curve{14, 1, 0, 1, 4, -6}, Curve{15, 1, 1, 1, -10, -10}}) {
    ManinSpace space = build_manin_space(e.level);
    const long c = oracle::cusp_count(e.level);
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
      if (e.level % p == 0) continue;
      ++checked;
      long ap = frobenius_trace(e, p);
      Polynomial expect = Polynomial::monomial(0);
      for (long i = 0; i + 1 < c; ++i) expect = expect * Polynomial::linear(p + 1);
      expect = expect * Polynomial::linear(ap) * Polynomial::linear(ap);
      if (charpoly(hecke_matrix(space, p).matrix) != expect) ++bad;
    }
  }
  double secs = seconds_since(t0);
  return {fixed && bad == 0 && secs < kHeckeBudget,
          std::string("N = 11 T_2/T_3 factorizations ") + (fixed ? "match" : "differ") + "; " + std::to_string(checked) +
              " (N, p) pairs vs point counts, " + std::to_string(bad) + " mismatches, " + fmt(secs) + " s"};
}

Outcome criterion5() {
  int pairs = 0, bad = 0;
  for (long n = 1; n <= kCommutationLevels; ++n) {
    ManinSpace space = build_manin_space(n);
    Reducer reducer;
    std::vector<HeckeMatrix> mats;
    for (long p : {2L, 3L, 5L, 7L})
      if (n % p != 0) mats.push_back(hecke_matrix(space, p, reducer));
    for (std::size_t i = 0; i < mats.size(); ++i)
      for (std::size_t j = i + 1; j < mats.size(); ++j) {
        ++pairs;
        if (!(mats[i].matrix * mats[j].matrix == mats[j].matrix * mats[i].matrix)) ++bad;
      }
  }
  return {bad == 0, std::to_string(pairs) + " commuting pairs checked for N <= " + std::to_string(kCommutationLevels) + ", " + std::to_string(bad) + " failures"};
}

Outcome criterion6() {
  int compared = 0, bad = 0;
  for (long n : {11L, 37L}) {
    ManinSpace space = build_manin_space(n);
    for (long p : {2L, 3L, 5L, 7L}) {
      RatMatrix cf = hecke_matrix(space, p, Strategy::ContinuedFraction).matrix;
      for (Strategy s : {Strategy::Lll, Strategy::Box}) {
        ++compared;
        if (!(hecke_matrix(space, p, s).matrix == cf)) ++bad;
      }
    }
  }
  return {bad == 0, std::to_string(compared) + " lll/box matrices compared with cf at N = 11, 37, " + std::to_string(bad) + " differ"};
}

bool product_law(const SymplecticSymbol& s) {
  BigInt prod = 1;
  for (const auto& p : s.pair_products()) prod *= p;
  return det(from_columns(std::span<const IntVector>(s.columns()))) == prod;
}

Outcome criterion7() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(7007);
  long nodes = 0, bad = 0;
  for (int t = 0; t < kSpSymbols; ++t) {
    SymplecticSymbol m = random_symplectic_symbol(rng, kSpMaxDet);
    SpReductionResult r = reduce_sp(m);
    if (!r.chain.all_unimodular()) ++bad;
    for (const auto& [s, k] : r.chain.terms())
      if (!product_law(s)) ++bad;
    for (const auto& node : r.trace) {
      ++nodes;
      bool ok = product_law(node.parent) && verify_symplectic_certificate(node.parent, node.certificate);
      for (std::size_t i = 0; i < node.parent.dim(); ++i)
        ok = ok && node.certificate.pairings[i] < node.certificate.bounds[i];
      FlagChain sum;
      for (const auto& term : node.expansion.terms) {
        ok = ok && product_law(term.symbol);
        add_flag_chain(sum, apartment_chain(term.symbol), term.epsilon);
      }
      add_flag_chain(sum, apartment_chain(node.parent), -1);
      if (!ok || !sum.empty()) ++bad;
    }
    FlagChain total = apartment_chain(r.chain);
    add_flag_chain(total, apartment_chain(m), -1);
    if (!total.empty()) ++bad;
  }
  double secs = seconds_since(t0);
  return {bad == 0 && secs < kSpBudget,
          std::to_string(kSpSymbols) + " symbols, " + std::to_string(nodes) + " nodes audited, " + std::to_string(bad) +
              " failures, " + fmt(secs) + " s (budget " + fmt(kSpBudget, 0) + " s)"};
}

Outcome criterion8() {
  std::mt19937_64 rng(8008);
  int dd_bad = 0, rel_bad = 0;
  for (int t = 0; t < kTwoSharblies; ++t) {
    GammaContext ctx{t % 2 ? 3u : 2u, 1};
    if (!random_sharbly_chain(rng, ctx, 2, 1, 5).boundary().boundary().empty()) ++dd_bad;
  }
  std::uniform_int_distribution<long> entry(-6, 6);
  for (int t = 0; t < kRelationSamples; ++t) {
    std::size_t n = t % 2 ? 3 : 2;
    PointTuple u = random_sharbly_chain(rng, {n, 1}, 1, 1, 5).terms().begin()->first;
    std::vector<IntVector> w(u.size(), IntVector(n));
    for (auto& p : w)
      do
        for (std::size_t r = 0; r < n; ++r) p[r] = entry(rng);
      while (p.is_zero());
    if (!hyperoctahedral_relation(u, w, n).boundary(n).empty()) ++rel_bad;
  }
  std::vector<SharblyChain> corpus;
  for (long level : {11L, 13L}) {
    SharblyChain base = reduced_base_cycle(level);
    for (long m = 2; corpus.size() < (level == 11 ? 1 : 2) * kCorpusN2PerLevel; ++m)
      if (std::gcd(m, level) == 1) corpus.push_back(hecke_translate(base, m));
  }
  for (std::size_t i = 0; i < kCorpusN3; ++i) corpus.push_back(random_boundary_cycle(rng, {3, 7}, 4, 3));
  std::size_t reduced = 0, iterations = 0, decreasing = 0, logged = 0;
  std::map<std::string, int> verdicts;
  for (const auto& xi : corpus) {
    CycleReduction r = reduce_cycle(xi, kSharblyMaxIter);
    ++verdicts[to_string(r.report.verdict)];
    if (r.report.verdict == Verdict::Reduced && sharbly_norm(r.chain) <= 1) ++reduced;
    for (const auto& it : r.report.iterations) {
      ++iterations;
      decreasing += it.decreased;
      if (!it.decreased || !it.cycle_ok || !it.faces_ok) ++logged;
    }
  }
  double reduced_frac = static_cast<double>(reduced) / static_cast<double>(corpus.size());
  double dec_frac = iterations ? static_cast<double>(decreasing) / static_cast<double>(iterations) : 1.0;
  std::string vs;
  for (const auto& [k, v] : verdicts) vs += (vs.empty() ? "" : " ") + k + "=" + std::to_string(v);
  return {dd_bad == 0 && rel_bad == 0 && reduced_frac >= kReducedFraction && dec_frac >= kDecreasingFraction,
          "dd=0 fails " + std::to_string(dd_bad) + "/" + std::to_string(kTwoSharblies) + ", relation fails " +
              std::to_string(rel_bad) + "/" + std::to_string(kRelationSamples) + "; " + std::to_string(corpus.size()) +
              " cycles: reduced " + fmt(100 * reduced_frac, 1) + "% (need " + fmt(100 * kReducedFraction, 0) +
              "%), strictly decreasing " + std::to_string(decreasing) + "/" + std::to_string(iterations) + " = " +
              fmt(100 * dec_frac, 1) + "% (need " + fmt(100 * kDecreasingFraction, 0) + "%); verdicts " + vs +
              "; logged " + std::to_string(logged)};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome criterion9() {
  char tmpl[] = "/tmp/modsym_accept_XXXXXX";
  const char* dir = mkdtemp(tmpl);
  if (!dir) return {false, "cannot create a temporary directory"};
  const std::string d = dir;
  std::ofstream(d + "/reduce.json") << R"({"matrix": [["17","-5","3"],["4","9","-2"],["1","1","13"]]})";
  std::ofstream(d + "/sp.json") << R"({"symbol": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["1","0","0","2"]]})";
  const std::string cli = MODSYM_CLI_PATH;
  const std::vector<std::string> jobs{
      "reduce --input " + d + "/reduce.json",
      "reduce --input " + d + "/reduce.json --strategy box --no-trace",
      "hecke --level 37 --primes 2,3,5",
      "sp-reduce --input " + d + "/sp.json",
      "sharbly-reduce --level 11 --seed 42",
      "sharbly-reduce --n 3 --level 7 --seed 9",
  };
  int identical = 0;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    std::string outs[2];
    int codes[2];
    for (int run = 0; run < 2; ++run) {
      std::string base = d + "/job" + std::to_string(j) + "_" + std::to_string(run);
      std::string cmd = cli + " " + jobs[j] + " --output " + base + ".out 2> " + base + ".err";
      codes[run] = std::system(cmd.c_str());
      outs[run] = slurp(base + ".out") + "\x1f" + slurp(base + ".err");
    }
    if (codes[0] == 0 && codes[1] == 0 && outs[0] == outs[1] && outs[0].size() > 1) ++identical;
  }
  std::system(("rm -rf " + d).c_str());
  return {identical == static_cast<int>(jobs.size()),
          std::to_string(identical) + "/" + std::to_string(jobs.size()) + " CLI jobs byte-identical across reruns"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"reduction termination and certificates", criterion1},
      {"continued-fraction oracle", criterion2},
      {"dimension law", criterion3},
      {"Hecke eigenvalues vs point counts", criterion4},
      {"Hecke operators commute", criterion5},
      {"strategy independence", criterion6},
      {"symplectic soundness", criterion7},
      {"sharbly machinery", criterion8},
      {"CLI reproducibility", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
