#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "modsym/io.hpp"

using namespace modsym;
using io::Json;

namespace {

struct Config {
  std::string command;
  std::size_t n = 0;
  long level = 11;
  std::vector<long> primes;
  std::string input;
  std::string output;
  std::size_t max_iter = 50;
  std::optional<std::uint64_t> seed;
  std::string strategy = "auto";
  bool no_trace = false;
};

class Report {
 public:
  void record(const Json& r) { records_ << io::line(r); }
  void say(const std::string& key, const std::string& value) { summary_.emplace_back(key, value); }
  void flush(const Config& cfg) const {
    if (cfg.output.empty()) {
      std::cout << records_.str();
    } else {
      std::ofstream out(cfg.output, std::ios::binary);
      if (!out) throw ParseError(cfg.output + ": cannot open output file");
      out << records_.str();
    }
    std::size_t width = 0;
    for (const auto& [k, v] : summary_) width = std::max(width, k.size());
    for (const auto& [k, v] : summary_) std::cerr << std::left << std::setw(static_cast<int>(width) + 2) << k << v << "\n";
  }

 private:
  std::ostringstream records_;
  std::vector<std::pair<std::string, std::string>> summary_;
};

const char* yes_no(bool b) { return b ? "yes" : "no"; }

Json require_input(const Config& cfg) {
  if (cfg.input.empty()) throw ParseError(cfg.command + ": --input is required");
  return io::read_document(cfg.input);
}

Json sharbly_json(const PointTuple& t, const BigRat& c) {
  Json o;
  o["record"] = "term";
  o["coefficient"] = io::to_json(c);
  o["points"] = io::to_json(t);
  return o;
}

void cmd_reduce(const Config& cfg, Report& rep) {
  const Json doc = require_input(cfg);
  SymbolChain root;
  if (doc.contains("matrix")) {
    auto cols = io::parse_columns(doc.at("matrix"), "/matrix");
    auto s = ModularSymbol::normalize(std::span<const IntVector>(cols));
    if (!s) throw DegenerateInputError("determinant is 0; the symbol vanishes by relation 3");
    root.add(*s, 1);
  } else {
    const Json& chain = io::require(doc, "chain", "");
    if (!chain.is_array()) throw ParseError("/chain: expected a list of terms");
    for (std::size_t i = 0; i < chain.size(); ++i) {
      std::string where = "/chain/" + std::to_string(i);
      BigInt k = io::parse_int(io::require(chain[i], "coefficient", where), where + "/coefficient");
      auto cols = io::parse_columns(io::require(chain[i], "columns", where), where + "/columns");
      root.add_columns(std::span<const IntVector>(cols), k);
    }
  }
  if (root.empty()) throw DegenerateInputError("input chain is zero");
  const std::size_t n = root.terms().begin()->first.dim();
  for (const auto& [s, k] : root.terms())
    if (s.dim() != n) throw DimensionError("chain mixes dimensions");
  if (cfg.n != 0 && cfg.n != n) throw DimensionError("--n " + std::to_string(cfg.n) + " does not match input dimension " + std::to_string(n));
  Reducer reducer(parse_strategy(cfg.strategy));
  SymbolChain out = reducer.reduce(root);
  const ReductionTrace& trace = reducer.trace();
  bool replay_ok = replay(root, trace) == out;
  Json in;
  in["record"] = "input";
  in["n"] = n;
  in["strategy"] = to_string(reducer.strategy());
  in["max_det"] = io::to_json(root.max_det());
  in["terms"] = root.size();
  rep.record(in);
  if (!cfg.no_trace) {
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
      const ReductionStep& st = trace.steps[i];
      Json r;
      r["record"] = "step";
      r["index"] = i;
      r["parent"] = io::to_json(st.parent);
      r["point"] = io::to_json(st.certificate.v);
      r["child_dets"] = io::to_json(st.certificate.child_dets);
      r["parent_det"] = io::to_json(st.certificate.parent_det);
      rep.record(r);
    }
  }
  for (const auto& [s, k] : out.terms()) {
    Json r;
    r["record"] = "term";
    r["coefficient"] = io::to_json(k);
    r["columns"] = io::to_json(s.columns());
    rep.record(r);
  }
  Json sum;
  sum["record"] = "summary";
  sum["terms"] = out.size();
  sum["steps"] = trace.steps.size();
  sum["all_unimodular"] = out.all_unimodular();
  sum["replay_ok"] = replay_ok;
  rep.record(sum);
  rep.say("command", "reduce");
  rep.say("dimension", std::to_string(n));
  rep.say("input max |det|", root.max_det().get_str());
  rep.say("output terms", std::to_string(out.size()));
  rep.say("trace steps", std::to_string(trace.steps.size()));
  rep.say("all unimodular", yes_no(out.all_unimodular()));
  rep.say("replay matches", yes_no(replay_ok));
  if (!replay_ok) throw InternalError("trace replay does not reproduce the output chain");
}

void cmd_hecke(const Config& cfg, Report& rep) {
  if (cfg.level < 1) throw ParseError("--level must be at least 1");
  std::vector<long> primes = cfg.primes.empty() ? std::vector<long>{2} : cfg.primes;
  for (long p : primes)
    if (!is_prime(p)) throw ParseError("--primes: " + std::to_string(p) + " is not prime");
  Strategy strategy = parse_strategy(cfg.strategy);
  ManinSpace space = build_manin_space(cfg.level);
  Json sp;
  sp["record"] = "space";
  sp["level"] = cfg.level;
  sp["dimension"] = space.dimension();
  sp["generators"] = space.generator_count();
  sp["strategy"] = to_string(strategy);
  rep.record(sp);
  rep.say("command", "hecke");
  rep.say("level", std::to_string(cfg.level));
  rep.say("dimension", std::to_string(space.dimension()) + (space.dimension() == 0 ? " (empty space)" : ""));
  Reducer reducer(strategy);
  std::vector<HeckeMatrix> mats;
  for (long p : primes) {
    mats.push_back(hecke_matrix(space, p, reducer));
    EigenReport e = eigen_report(mats.back().matrix);
    Json r;
    r["record"] = "hecke";
    r["p"] = p;
    r["label"] = mats.back().label();
    if (!cfg.no_trace) r["matrix"] = io::to_json(mats.back().matrix);
    r["charpoly"] = e.charpoly.str();
    r["factorization"] = e.factors.str();
    Json roots = Json::array();
    for (const auto& root : e.factors.roots) {
      Json x;
      x["value"] = io::to_json(root.value);
      x["multiplicity"] = root.multiplicity;
      roots.push_back(x);
    }
    r["rational_eigenvalues"] = roots;
    rep.record(r);
    rep.say(mats.back().label() + " charpoly", e.factors.str());
  }
  bool all = true;
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j) {
      bool ok = mats[i].matrix * mats[j].matrix == mats[j].matrix * mats[i].matrix;
      all = all && ok;
      Json r;
      r["record"] = "commutation";
      r["p"] = mats[i].p;
      r["q"] = mats[j].p;
      r["commute"] = ok;
      rep.record(r);
    }
  rep.say("operators commute", yes_no(all));
}

void cmd_sp_reduce(const Config& cfg, Report& rep) {
  const Json doc = require_input(cfg);
  auto cols = io::parse_columns(io::require(doc, "symbol", ""), "/symbol");
  if (cfg.n != 0 && cfg.n != cols.size()) throw DimensionError("--dim does not match the input symbol");
  SymplecticSymbol m = validate_symplectic(std::span<const IntVector>(cols));
  SpReductionResult r = reduce_sp(m, parse_strategy(cfg.strategy));
  bool certs = true;
  for (const auto& node : r.trace) certs = certs && verify_symplectic_certificate(node.parent, node.certificate);
  FlagChain diff = apartment_chain(r.chain);
  add_flag_chain(diff, apartment_chain(m), -1);
  Json in;
  in["record"] = "input";
  in["columns"] = io::to_json(m.columns());
  in["pair_products"] = io::to_json(m.pair_products());
  in["det"] = io::to_json(m.det());
  rep.record(in);
  if (!cfg.no_trace) {
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      const SpTraceNode& node = r.trace[i];
      Json j;
      j["record"] = "node";
      j["index"] = i;
      j["parent"] = io::to_json(node.parent.columns());
      j["point"] = io::to_json(node.certificate.v);
      j["pairings"] = io::to_json(node.certificate.pairings);
      j["bounds"] = io::to_json(node.certificate.bounds);
      Json terms = Json::array();
      for (std::size_t t = 0; t < node.expansion.terms.size(); ++t) {
        Json x;
        x["index"] = node.expansion.terms[t].index + 1;
        x["epsilon"] = node.expansion.terms[t].epsilon;
        x["columns"] = io::to_json(node.expansion.terms[t].symbol.columns());
        x["pieces"] = node.pieces[t].size();
        terms.push_back(x);
      }
      j["terms"] = terms;
      Json deg = Json::array();
      for (auto d : node.expansion.degenerate) deg.push_back(d + 1);
      j["degenerate"] = deg;
      j["inner_steps"] = node.inner_steps;
      rep.record(j);
    }
  }
  for (const auto& [s, k] : r.chain.terms()) {
    Json j;
    j["record"] = "term";
    j["coefficient"] = io::to_json(k);
    j["columns"] = io::to_json(s.columns());
    rep.record(j);
  }
  Json sum;
  sum["record"] = "summary";
  sum["terms"] = r.chain.size();
  sum["nodes"] = r.trace.size();
  sum["all_unimodular"] = r.chain.all_unimodular();
  sum["certificates_ok"] = certs;
  sum["apartment_ok"] = diff.empty();
  rep.record(sum);
  rep.say("command", "sp-reduce");
  rep.say("input det", m.det().get_str());
  rep.say("output terms", std::to_string(r.chain.size()));
  rep.say("trace nodes", std::to_string(r.trace.size()));
  rep.say("all unimodular", yes_no(r.chain.all_unimodular()));
  rep.say("certificates verify", yes_no(certs));
  rep.say("apartment chain kept", yes_no(diff.empty()));
}

void cmd_sharbly_reduce(const Config& cfg, Report& rep) {
  if (!cfg.seed) throw ParseError("sharbly-reduce: --seed is required");
  std::mt19937_64 rng(*cfg.seed);
  GammaContext ctx{cfg.n == 0 ? 2 : cfg.n, cfg.level};
  std::string source;
  std::optional<SharblyChain> xi;
  if (!cfg.input.empty()) {
    const Json doc = io::read_document(cfg.input);
    if (doc.contains("n")) ctx.n = static_cast<std::size_t>(io::parse_int(doc.at("n"), "/n").get_ui());
    if (doc.contains("level")) ctx.level = io::parse_int(doc.at("level"), "/level").get_si();
    if (ctx.level < 1) throw ParseError("/level: must be at least 1");
    xi.emplace(ctx, 1);
    const Json& chain = io::require(doc, "chain", "");
    if (!chain.is_array()) throw ParseError("/chain: expected a list of terms");
    for (std::size_t i = 0; i < chain.size(); ++i) {
      std::string where = "/chain/" + std::to_string(i);
      BigRat k = io::parse_rat(io::require(chain[i], "coefficient", where), where + "/coefficient");
      auto pts = io::parse_columns(io::require(chain[i], "points", where), where + "/points");
      xi->add(pts, k);
    }
    source = cfg.input;
  } else if (ctx.n == 2) {
    long m = 0;
    if (!cfg.primes.empty()) {
      m = cfg.primes.front();
    } else {
      std::uniform_int_distribution<long> pick(2, 12);
      do m = pick(rng);
      while (std::gcd(m, ctx.level) != 1);
    }
    xi = hecke_translate(reduced_base_cycle(ctx.level), m);
    source = "hecke translate T_" + std::to_string(m) + " of the reduced base cycle";
  } else {
    xi = random_boundary_cycle(rng, ctx, 4, 3);
    source = "boundary of a random 2-sharbly chain";
  }
  AssignmentOptions opts;
  opts.strategy = parse_strategy(cfg.strategy);
  CycleReduction r = reduce_cycle(*xi, cfg.max_iter, opts);
  Json in;
  in["record"] = "input";
  in["n"] = ctx.n;
  in["level"] = ctx.level;
  in["source"] = source;
  in["seed"] = *cfg.seed;
  in["norm"] = io::to_json(r.report.initial_norm);
  in["support"] = r.report.initial_support;
  rep.record(in);
  std::size_t decreased = 0;
  for (const auto& it : r.report.iterations) {
    Json j;
    j["record"] = "iteration";
    j["index"] = it.index;
    j["norm"] = io::to_json(it.norm);
    j["support"] = it.support;
    j["orbits_assigned"] = it.orbits_assigned;
    j["decreased"] = it.decreased;
    j["cycle_ok"] = it.cycle_ok;
    j["old_faces_cancelled"] = it.faces_ok;
    j["recurring_faces"] = it.recurring_faces;
    rep.record(j);
    decreased += it.decreased;
  }
  if (!cfg.no_trace)
    for (const auto& v : r.report.violations) {
      Json j;
      j["record"] = "violation";
      j["detail"] = v;
      rep.record(j);
    }
  for (const auto& [t, c] : r.chain.terms()) {
    rep.record(sharbly_json(t, c));
  }
  Json v;
  v["record"] = "verdict";
  v["verdict"] = to_string(r.report.verdict);
  v["iterations"] = r.report.iterations.size();
  v["final_norm"] = io::to_json(sharbly_norm(r.chain));
  v["violations"] = r.report.violations.size();
  rep.record(v);
  std::string norms = r.report.initial_norm.get_str();
  for (const auto& it : r.report.iterations) norms += " " + it.norm.get_str();
  rep.say("command", "sharbly-reduce");
  rep.say("cycle", source);
  rep.say("n, level", std::to_string(ctx.n) + ", " + std::to_string(ctx.level));
  rep.say("norms", norms);
  rep.say("strict decreases", std::to_string(decreased) + "/" + std::to_string(r.report.iterations.size()));
  rep.say("verdict", to_string(r.report.verdict));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modular symbols, Hecke operators, symplectic and sharbly reduction"};
  app.require_subcommand(1);
  Config cfg;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n,--dim", cfg.n, "Dimension n (or 2n for sp-reduce)");
    sub->add_option("--level", cfg.level, "Level N of Gamma_0(N)");
    sub->add_option("--primes", cfg.primes, "Comma-separated primes")->delimiter(',');
    sub->add_option("--input", cfg.input, "Input JSON document");
    sub->add_option("--output", cfg.output, "Output file for JSON-lines records (default stdout)");
    sub->add_option("--max-iter", cfg.max_iter, "Iteration cap for sharbly reduction");
    sub->add_option("--seed", cfg.seed, "Seed for generated inputs");
    sub->add_option("--strategy", cfg.strategy, "Reducing-point strategy")
        ->check(CLI::IsMember({"auto", "cf", "lll", "box"}));
    sub->add_flag("--no-trace", cfg.no_trace, "Suppress certificate and trace records");
  };
  const std::pair<const char*, const char*> commands[] = {
      {"reduce", "Reduce a modular symbol or chain to unimodular symbols"},
      {"hecke", "Hecke matrices and eigenvalues on the Manin space of level N"},
      {"sp-reduce", "Reduce a symplectic Sp_4 symbol"},
      {"sharbly-reduce", "Reduce a sharbly cycle modulo Gamma_0(N)"},
  };
  for (const auto& [name, about] : commands) {
    CLI::App* sub = app.add_subcommand(name, about);
    add_common(sub);
    sub->callback([&cfg, name] { cfg.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    Report rep;
    if (cfg.command == "reduce") cmd_reduce(cfg, rep);
    else if (cfg.command == "hecke") cmd_hecke(cfg, rep);
    else if (cfg.command == "sp-reduce") cmd_sp_reduce(cfg, rep);
    else cmd_sharbly_reduce(cfg, rep);
    rep.flush(cfg);
    return 0;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const MathError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
