#pragma once

// Oriented chains on tuples of projective points. A point is stored as its
// sign-normalized primitive vector; a tuple is stored sorted, the sort
// parity moving into the coefficient. Tuples with a repeated point are zero.

#include <map>
#include <string>
#include <vector>

#include "modsym/arith.hpp"

namespace modsym {

using PointTuple = std::vector<IntVector>;

struct TupleLess {
  bool operator()(const PointTuple& a, const PointTuple& b) const;
};

// Sorts `points` in place after projectivizing each entry; returns the
// permutation sign, or 0 when two points coincide.
int canonicalize_tuple(PointTuple& points);

class PointChain {
 public:
  using Terms = std::map<PointTuple, BigRat, TupleLess>;

  // Tuples whose span has rank below `min_rank` are dropped on insertion.
  explicit PointChain(std::size_t min_rank = 0) : min_rank_(min_rank) {}

  void add(PointTuple points, const BigRat& coefficient);
  void add(const PointChain& other, const BigRat& scale = 1);

  // Alternating face map: [p_0..p_k] -> sum (-1)^i [.. p_i omitted ..].
  PointChain boundary(std::size_t face_min_rank) const;

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool operator==(const PointChain& o) const { return terms_ == o.terms_; }
  std::string str() const;

 private:
  std::size_t min_rank_;
  Terms terms_;
};

std::size_t tuple_rank(const PointTuple& points);

}  // namespace modsym
