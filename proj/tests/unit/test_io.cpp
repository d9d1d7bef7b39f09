#include "doctest.h"
#include "modsym/io.hpp"

using namespace modsym;

TEST_CASE("documents report line and column") {
  try {
    io::parse_document("{\n  \"a\": [1,\n  2 3]}", "job.json");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).rfind("job.json:3:5:", 0) == 0);
  }
}

TEST_CASE("exact numbers round-trip as decimal strings") {
  io::Json big = "123456789012345678901234567890";
  CHECK(io::parse_int(big, "/x").get_str() == "123456789012345678901234567890");
  CHECK(io::parse_int(io::Json(-7), "/x") == -7);
  CHECK(io::parse_rat(io::Json("-3/6"), "/x") == BigRat(-1, 2));
  CHECK_THROWS_AS(io::parse_int(io::Json("1.5"), "/x"), ParseError);
  CHECK_THROWS_AS(io::parse_rat(io::Json("1/0"), "/x"), ParseError);
  CHECK_THROWS_AS(io::parse_columns(io::Json::parse(R"([["1","2"],["3"]])"), "/m"), ParseError);
  CHECK(io::to_json(IntVector{1, -2}).dump() == R"(["1","-2"])");
}
