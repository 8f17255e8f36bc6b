#include "nilcohom/families.hpp"
#include "nilcohom/io.hpp"

#include <gtest/gtest.h>

using namespace nilcohom;

namespace {

std::string parse_error(const std::string& text) {
  try {
    io::parse_presentation(text);
  } catch (const io::ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(PresentationJson, RoundTripIsByteIdentical) {
  for (const auto& P : {families::heisenberg(), families::paper_example({2, 4}), families::abelian(3),
                        families::random(5, 3, 5, 1)}) {
    const std::string text = io::to_json(P).dump(2);
    const auto Q = io::parse_presentation(text);
    EXPECT_EQ(Q.n, P.n);
    EXPECT_EQ(Q.m, P.m);
    EXPECT_EQ(bracket_matrix(Q), bracket_matrix(P));
    EXPECT_EQ(io::to_json(Q).dump(2), text);
  }
}

TEST(PresentationJson, OneBasedIndices) {
  const auto j = io::to_json(families::heisenberg());
  EXPECT_EQ(j.dump(), R"({"n":2,"m":1,"brackets":[{"i":1,"j":2,"y":[1]}]})");
}

TEST(PresentationJson, LargeIntegersAsStrings) {
  const auto P = io::parse_presentation(
      R"({"n":2,"m":1,"brackets":[{"i":1,"j":2,"y":["123456789012345678901234567890"]}]})");
  EXPECT_EQ(P.bracket(0, 1)[0], Int("123456789012345678901234567890"));
  EXPECT_EQ(io::to_json(P)["brackets"][0]["y"][0], "123456789012345678901234567890");
}

TEST(PresentationJson, ErrorsNameTheField) {
  EXPECT_EQ(parse_error(R"({"m":1})"), "missing field 'n'");
  EXPECT_EQ(parse_error(R"({"n":2})"), "missing field 'm'");
  EXPECT_EQ(parse_error(R"({"n":2,"m":1,"brackets":[{"i":1,"y":[1]}]})"), "missing field 'brackets[0].j'");
  EXPECT_NE(parse_error(R"({"n":2,"m":1,"brackets":[{"i":1,"j":2,"y":[1]},{"i":1,"j":2,"y":[2]}]})")
                .find("duplicate bracket (1,2)"),
            std::string::npos);
  EXPECT_NE(parse_error(R"({"n":2,"m":1,"brackets":[{"i":0,"j":2,"y":[1]}]})").find("brackets[0].i"),
            std::string::npos);
  EXPECT_NE(parse_error(R"({"n":-1,"m":1})").find("'n'"), std::string::npos);
  EXPECT_NE(parse_error(R"({"n":2,"m":1,"brackets":[{"i":1,"j":2,"y":["x"]}]})").find("brackets[0].y"),
            std::string::npos);
  EXPECT_EQ(parse_error("{not json").rfind("malformed JSON", 0), 0u);
  EXPECT_EQ(parse_error("[1,2]"), "presentation: expected a JSON object");
}

TEST(InvariantsJson, RoundTrip) {
  const auto g = AbelianGroupInvariants::from_orders(5, {2, 4});
  const auto j = io::to_json(g);
  EXPECT_EQ(j.dump(), R"({"free":5,"torsion":[2,4]})");
  EXPECT_EQ(io::invariants_from_json(j, "h2"), g);
}

TEST(CocycleJson, RoundTrip) {
  const Cocycle x = CocycleLemmaX{{1, -2, 0}, 2};
  const Cocycle y = CocycleLemmaY{IntMatrix{{1, 0}, {0, -1}, {3, 2}}};
  const Cocycle s = scale(3, x) + y;
  for (const auto& w : {x, y, s}) {
    const auto j = io::to_json(w);
    const auto back = io::cocycle_from_json(io::Json::parse(j.dump()));
    EXPECT_EQ(back, w);
    EXPECT_EQ(io::to_json(back).dump(), j.dump());
  }
  EXPECT_EQ(io::to_json(x).dump(), R"({"kind":"lemmax","data":[1,-2,0],"order":2})");
}

TEST(CocycleJson, Errors) {
  auto message = [](const std::string& text) -> std::string {
    try {
      io::cocycle_from_json(io::Json::parse(text));
    } catch (const io::ParseError& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_EQ(message(R"({"data":[1]})"), "missing field 'cocycle.kind'");
  EXPECT_EQ(message(R"({"kind":"other","data":[1]})"), "field 'cocycle.kind': unknown kind 'other'");
  EXPECT_EQ(message(R"({"kind":"lemmay","data":[[1,2],[3]]})"), "field 'cocycle.data': ragged matrix");
}
