#include "modsym/io.hpp"

#include <fstream>
#include <sstream>

namespace modsym::io {

namespace {

std::string position(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

bool is_integer_literal(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

Json parse_document(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // byte is 1-based and points just past the offending character
    std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    std::string what = e.what();
    auto cut = what.find(": ", what.find("parse error"));
    throw ParseError(source + ":" + position(text, at) + ": " + (cut == std::string::npos ? what : what.substr(cut + 2)));
  }
}

Json read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open input file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), path);
}

BigInt parse_int(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return BigInt(j.dump());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (is_integer_literal(s)) return BigInt(s[0] == '+' ? s.substr(1) : s);
  }
  throw ParseError(where + ": expected an integer (decimal string), got " + j.dump());
}

BigRat parse_rat(const Json& j, const std::string& where) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      std::string num = s.substr(0, slash), den = s.substr(slash + 1);
      if (is_integer_literal(num) && is_integer_literal(den) && den[0] != '-' && den[0] != '+') {
        BigInt d(den);
        if (d == 0) throw ParseError(where + ": zero denominator");
        return make_rat(BigInt(num[0] == '+' ? num.substr(1) : num), d);
      }
      throw ParseError(where + ": expected a rational p/q, got " + j.dump());
    }
  }
  return BigRat(parse_int(j, where));
}

IntVector parse_vector(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a nonempty array of integers");
  IntVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = parse_int(j[i], where + "/" + std::to_string(i));
  return v;
}

std::vector<IntVector> parse_columns(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a nonempty list of columns");
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < j.size(); ++i) cols.push_back(parse_vector(j[i], where + "/" + std::to_string(i)));
  for (const auto& c : cols)
    if (c.size() != cols[0].size()) throw ParseError(where + ": columns have different lengths");
  return cols;
}

const Json& require(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

Json to_json(const BigInt& x) { return x.get_str(); }
Json to_json(const BigRat& x) { return x.get_str(); }

Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

Json to_json(const std::vector<BigInt>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

Json to_json(const std::vector<IntVector>& cols) {
  Json a = Json::array();
  for (const auto& c : cols) a.push_back(to_json(c));
  return a;
}

Json to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).get_str());
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const ModularSymbol& s) {
  Json o;
  o["sign"] = s.sign();
  o["columns"] = to_json(s.columns());
  return o;
}

std::string line(const Json& record) { return record.dump() + "\n"; }

}  // namespace modsym::io
