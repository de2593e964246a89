#include <doctest.h>

#include "djt/io/io.hpp"
#include "djt/jacobi/jacobi.hpp"
#include "fixtures.hpp"

using namespace djt;
using namespace djt::io;

namespace {

Chart r3() { return Chart("R3", {"u", "q", "p"}); }

}  // namespace

TEST_CASE("tensor literals") {
  Chart c = r3();
  Multivector lam = read_multivector(Json::parse(R"([[["u","p"],"p"],[["q","p"],"1"]])"), c, 2);
  CHECK(lam == djt::testing::contact_r3().bivector());
  // Index order carries the antisymmetry sign; repeated entries add.
  Multivector swapped = read_multivector(Json::parse(R"([[["p","q"],"1"],[["p","q"],"q"]])"), c, 2);
  CHECK(swapped == Multivector::basis(c, {1, 2}).scaled(-(ScalarExpr(1) + ScalarExpr::symbol(1))));
  CHECK(read_multivector(Json::array(), c, 1).is_zero());
  CHECK(read_multivector(Json::parse(R"([[["q","p"],"p - p"]])"), c, 2).is_zero());
  DiffForm f = read_form(Json::parse(R"([[[],"u/2"]])"), c, 0);
  CHECK(f[0] == parse_expr("u/2", c));

  CHECK_THROWS_AS(read_multivector(Json::parse(R"([[["q"],"1"]])"), c, 2), InputError);
  CHECK_THROWS_AS(read_multivector(Json::parse(R"([[["q","q"],"1"]])"), c, 2), InputError);
  CHECK_THROWS_AS(read_multivector(Json::parse(R"([[["q","x"],"1"]])"), c, 2), InputError);
  CHECK_THROWS_AS(read_multivector(Json::parse(R"([[["q","p"],1]])"), c, 2), InputError);
  CHECK_THROWS_AS(read_multivector(Json::parse(R"({"q":1})"), c, 1), InputError);
  CHECK_THROWS_AS(read_multivector(Json::parse(R"([[["q","p"],"1 +"]])"), c, 2), ParseError);
  CHECK_THROWS_AS(read_multivector(Json::parse(R"([[["q","p"],"w"]])"), c, 2), ParseError);
}

TEST_CASE("canonical writing round-trips") {
  Chart c = r3();
  Json messy = Json::parse(R"([[["p","u"],"-p"],[["p","q"],"(q^2 - 1)/(q + 1) - q"]])");
  Multivector t = read_multivector(messy, c, 2);
  Json canon = write_tensor(t);
  CHECK(canon.dump() == R"([[["u","p"],"p"],[["q","p"],"1"]])");
  CHECK(read_multivector(canon, c, 2) == t);
  CHECK(tensor_text(t) == "{u,p}: p; {q,p}: 1");
  CHECK(tensor_text(Multivector(c, 2)) == "0");

  LForm w = read_lform(Json::parse(R"({"jet":[[["q"],"t"]]})"), Chart("R3t", {"u", "q", "p"}, {"t"}), 2);
  CHECK(w.plain().is_zero());
  CHECK(write_lform(w).dump() == R"({"plain":[],"jet":[[["q"],"t"]]})");
  CHECK_THROWS_AS(read_lform(Json::parse(R"({"plane":[]})"), c, 2), InputError);
}

TEST_CASE("charts and points") {
  Chart c = read_chart(Json::parse(R"({"name":"R2t","coordinates":["q","p"],"parameters":["t"]})"));
  CHECK(c.coordinates() == std::vector<std::string>{"q", "p"});
  CHECK(c.parameters() == std::vector<std::string>{"t"});
  CHECK(write_chart(c).dump() == R"({"name":"R2t","coordinates":["q","p"],"parameters":["t"]})");
  CHECK_THROWS_AS(read_chart(Json::parse(R"({"coordinates":["q"]})")), InputError);
  CHECK_THROWS_AS(read_chart(Json::parse(R"({"name":"X","coordinates":["q","q"]})")), InputError);

  Point p = read_point(Json::parse(R"({"q":-2,"p":"3/4","t":"0.5"})"), c);
  CHECK(p.at("q") == Rational(-2));
  CHECK(p.at("p") == Rational(3, 4));
  CHECK(p.at("t") == Rational(1, 2));
  CHECK(point_text(p, c) == "(q=-2, p=3/4, t=1/2)");
  CHECK_THROWS_AS(read_point(Json::parse(R"({"x":1})"), c), InputError);
  CHECK_THROWS_AS(read_point(Json::parse(R"({"q":1.5})"), c), InputError);
  CHECK_THROWS_AS(read_point(Json::parse(R"({"q":"1/0"})"), c), InputError);
}

TEST_CASE("document layout") {
  Json doc = Json::object();
  doc["chart"] = write_chart(r3());
  doc["reeb"] = Json::array();
  CHECK(write_document(doc) == "{\n  \"chart\": {\"name\":\"R3\",\"coordinates\":[\"u\",\"q\",\"p\"]},\n  \"reeb\": []\n}\n");
  CHECK(write_document(Json::object()) == "{}\n");
}
