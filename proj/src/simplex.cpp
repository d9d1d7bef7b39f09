#include "modsym/simplex.hpp"

#include <algorithm>
#include <sstream>

namespace modsym {

bool TupleLess::operator()(const PointTuple& a, const PointTuple& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = compare(a[i], b[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

int canonicalize_tuple(PointTuple& points) {
  for (auto& p : points) p = primitive_part(p);
  int sign = 1;
  // insertion sort, counting transpositions
  for (std::size_t i = 1; i < points.size(); ++i)
    for (std::size_t j = i; j > 0; --j) {
      int c = compare(points[j - 1], points[j]);
      if (c == 0) return 0;
      if (c < 0) break;
      std::swap(points[j - 1], points[j]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i - 1] == points[i]) return 0;
  return sign;
}

std::size_t tuple_rank(const PointTuple& points) {
  if (points.empty()) return 0;
  return rank(from_columns(points));
}

void PointChain::add(PointTuple points, const BigRat& coefficient) {
  if (coefficient == 0) return;
  int sign = canonicalize_tuple(points);
  if (sign == 0) return;
  if (min_rank_ > 0 && tuple_rank(points) < min_rank_) return;
  auto [it, inserted] = terms_.try_emplace(std::move(points), 0);
  if (sign > 0) it->second += coefficient; else it->second -= coefficient;
  if (it->second == 0) terms_.erase(it);
}

void PointChain::add(const PointChain& other, const BigRat& scale) {
  for (const auto& [t, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(t, 0);
    it->second += scale * c;
    if (it->second == 0) terms_.erase(it);
  }
}

PointChain PointChain::boundary(std::size_t face_min_rank) const {
  PointChain out(face_min_rank);
  for (const auto& [t, c] : terms_) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      PointTuple face;
      face.reserve(t.size() - 1);
      for (std::size_t j = 0; j < t.size(); ++j)
        if (j != i) face.push_back(t[j]);
      out.add(std::move(face), (i % 2) ? BigRat(-c) : c);
    }
  }
  return out;
}

std::string PointChain::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str() << "*[";
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i].str();
    os << ']';
  }
  return first ? "0" : os.str();
}

}  // namespace modsym
