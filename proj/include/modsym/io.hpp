#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "modsym/hecke.hpp"
#include "modsym/sharbly.hpp"
#include "modsym/symplectic.hpp"

namespace modsym::io {

using Json = nlohmann::ordered_json;

// Parses a document; ParseError messages carry "source:line:column".
Json parse_document(const std::string& text, const std::string& source);
Json read_document(const std::string& path);

// Exact numbers are decimal strings; plain JSON integers are accepted on
// input. `where` is a JSON-pointer-like path used in error messages.
BigInt parse_int(const Json& j, const std::string& where);
BigRat parse_rat(const Json& j, const std::string& where);
IntVector parse_vector(const Json& j, const std::string& where);
std::vector<IntVector> parse_columns(const Json& j, const std::string& where);
const Json& require(const Json& j, const std::string& key, const std::string& where);

Json to_json(const BigInt& x);
Json to_json(const BigRat& x);
Json to_json(const IntVector& v);
Json to_json(const std::vector<BigInt>& v);
Json to_json(const std::vector<IntVector>& cols);
Json to_json(const RatMatrix& m);
Json to_json(const ModularSymbol& s);

// One compact record per line.
std::string line(const Json& record);

}  // namespace modsym::io
