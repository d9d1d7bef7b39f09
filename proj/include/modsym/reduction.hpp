#pragma once

#include <map>
#include <string>
#include <vector>

#include "modsym/symbol.hpp"

namespace modsym {

enum class Strategy {
  Auto,               // continued fractions for n = 2, rounding plus LLL candidates otherwise
  ContinuedFraction,  // n = 2 only; falls back to Auto for n >= 3
  Lll,                // short vectors of the adjugate lattice
  Box,                // exhaustive search of the fundamental parallelepiped
};

Strategy parse_strategy(const std::string& name);
std::string to_string(Strategy s);

// A reducing point v for m: |det m_i(v)| < |det m| for every i, where m_i(v)
// is m with column i replaced by v.
struct ReducingCertificate {
  IntVector v;
  std::vector<BigInt> child_dets;
  BigInt parent_det;
};

// Builds and checks a certificate; throws InternalError if v does not reduce m.
ReducingCertificate make_certificate(const ModularSymbol& m, const IntVector& v);
bool verify_certificate(const ModularSymbol& m, const ReducingCertificate& c);

ReducingCertificate find_reducing_point(const ModularSymbol& m, Strategy strategy = Strategy::Auto);

// Largest |det| for which the Box strategy enumerates the parallelepiped.
inline constexpr long kBoxEnumerationLimit = 1L << 20;

struct ReductionStep {
  ModularSymbol parent;  // sign +1
  ReducingCertificate certificate;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
};

struct ReductionResult {
  SymbolChain chain;
  ReductionTrace trace;
};

// Unimodularization with memoized reducing points. One step is recorded per
// distinct nonunimodular symbol encountered, across all calls.
class Reducer {
 public:
  explicit Reducer(Strategy strategy = Strategy::Auto) : strategy_(strategy) {}

  SymbolChain reduce(const ModularSymbol& s);
  SymbolChain reduce(const SymbolChain& c);

  Strategy strategy() const { return strategy_; }
  const ReductionTrace& trace() const { return trace_; }

 private:
  const ReducingCertificate& certificate_for(const ModularSymbol& s);

  Strategy strategy_;
  std::map<ModularSymbol, std::size_t> points_;  // index into trace_.steps
  ReductionTrace trace_;
};

ReductionResult reduce_to_unimodular(const ModularSymbol& m, Strategy strategy = Strategy::Auto);

// Re-derives the unimodular chain of `root` from a trace, re-verifying every
// certificate it uses. Throws InternalError when a step is missing or wrong.
SymbolChain replay(const SymbolChain& root, const ReductionTrace& trace);

}  // namespace modsym
