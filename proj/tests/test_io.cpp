#include "doctest.h"

#include "shepcor/io.hpp"

#include <stdexcept>

using namespace shepcor;
using nlohmann::json;

TEST_CASE("histogram csv with and without header") {
  Histogram plain = parse_histogram_csv("-1/2,3\n1/2,1\n");
  CHECK(plain.classes() == 2);
  CHECK(plain.width() == 1);
  CHECK(plain.weights()[0] == Rational(3, 4));

  Histogram header = parse_histogram_csv("midpoint,count\r\n0.5,1\r\n\r\n1.5,1\r\n");
  CHECK(header.midpoints()[0] == Rational(1, 2));
  CHECK(header.midpoints()[1] == Rational(3, 2));

  CHECK_THROWS_AS(parse_histogram_csv("1,2,3\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_histogram_csv("0,1\nx,2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_histogram_csv(""), std::invalid_argument);
}

TEST_CASE("samples parse one value per line") {
  auto xs = parse_samples("0.5\n\n-2\n3e-1\n");
  REQUIRE(xs.size() == 3);
  CHECK(xs[0] == doctest::Approx(0.5));
  CHECK(xs[1] == doctest::Approx(-2.0));
  CHECK(xs[2] == doctest::Approx(0.3));
  CHECK_THROWS_AS(parse_samples("1\nabc\n"), std::invalid_argument);
}

TEST_CASE("joint csv builds a bivariate lattice distribution") {
  BivariateLatticeDist d =
      parse_joint_csv("s1,s2,prob\n0,0,1/2\n1,-2,1/2\n", Rational(1), 2, Rational(1, 2), 1);
  CHECK(d.support.size() == 2);
  CHECK(d.support[1][1] == -2);
  CHECK(d.probs[0] == Rational(1, 2));
  CHECK(d.m1 == 2);
  CHECK_THROWS_AS(parse_joint_csv("0.5,0,1\n", Rational(1), 1, Rational(1), 1),
                  std::invalid_argument);
}

TEST_CASE("lattice json accepts strings and numbers") {
  LatticeDist d = parse_lattice_json(
      R"({"h": 0.5, "m": 2, "support": [0, 3], "probs": ["1/4", 0.75]})");
  CHECK(d.h == Rational(1, 2));
  CHECK(d.m == 2);
  CHECK(d.probs[1] == Rational(3, 4));

  CHECK_THROWS_AS(parse_lattice_json(R"({"h": 1, "support": [0], "probs": 1})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_lattice_json("[1,2]"), std::invalid_argument);
}

TEST_CASE("moment payload: bare arrays choose the lane by entry type") {
  auto exact = parse_moment_payload(R"(["1", "1/2", "-3/4"])");
  REQUIRE(std::holds_alternative<MomentSeq>(exact));
  CHECK(std::get<MomentSeq>(exact)[2] == Rational(-3, 4));

  auto approx = parse_moment_payload("[1.0, 0.5, 0.25]");
  REQUIRE(std::holds_alternative<std::vector<double>>(approx));
  CHECK(std::get<std::vector<double>>(approx)[1] == doctest::Approx(0.5));

  CHECK_THROWS_AS(parse_moment_payload(R"(["1", 0.5])"), std::invalid_argument);
  CHECK_THROWS_AS(parse_moment_payload(R"(["2", "0"])"), std::invalid_argument);
  CHECK_THROWS_AS(parse_moment_payload("[1.5, 0.5]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_moment_payload("[]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_moment_payload("not json"), std::invalid_argument);
}

TEST_CASE("moment payload: envelope object") {
  auto p = parse_moment_payload(R"({"moments": ["1", "0", "11/12"], "h": "1"})");
  REQUIRE(std::holds_alternative<MomentSeq>(p));
  CHECK(std::get<MomentSeq>(p)[2] == Rational(11, 12));
}

TEST_CASE("moment payload: tensors") {
  std::string text = R"({
    "dims": 2,
    "values": [
      {"index": [0, 0], "value": "1"},
      {"index": [0, 1], "value": "1/3"},
      {"index": [1, 0], "value": "-2"},
      {"index": [1, 1], "value": "0"}
    ]
  })";
  auto p = parse_moment_payload(text);
  REQUIRE(std::holds_alternative<MomentTensor>(p));
  const MomentTensor& t = std::get<MomentTensor>(p);
  CHECK(t.max_orders() == std::vector<int>{1, 1});
  CHECK(t.at(MultiIndex({1, 0})) == Rational(-2));

  auto f = parse_moment_payload(
      R"({"values": [{"index": [0], "value": 1.0}, {"index": [1], "value": 0.5}]})");
  REQUIRE(std::holds_alternative<MomentTensorF>(f));
  CHECK(std::get<MomentTensorF>(f).at(MultiIndex({1})) == doctest::Approx(0.5));

  CHECK_THROWS_AS(parse_moment_payload(
                      R"({"values": [{"index": [0], "value": "1"}, {"index": [0], "value": "1"}]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_moment_payload(R"({"values": [{"index": [0]}]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_moment_payload(
                      R"({"values": [{"index": [0], "value": "1"}, {"index": [1], "value": 0.5}]})"),
                  std::invalid_argument);
}

TEST_CASE("json rendering round trips") {
  MomentSeq seq({Rational(1), Rational(-1, 2), Rational(7, 6)});
  json j = seq_to_json(seq);
  CHECK(j == json::array({"1", "-1/2", "7/6"}));
  auto back = parse_moment_payload(j.dump());
  CHECK(std::get<MomentSeq>(back) == seq);

  std::vector<double> fs{1.0, 0.25};
  json jf = seq_to_json(std::span<const double>(fs));
  CHECK(jf[1].get<double>() == doctest::Approx(0.25));

  std::map<MultiIndex, Rational> values{{MultiIndex({0, 0}), Rational(1)},
                                        {MultiIndex({0, 1}), Rational(1, 7)},
                                        {MultiIndex({1, 0}), Rational(2)},
                                        {MultiIndex({1, 1}), Rational(0)}};
  MomentTensor t(std::move(values));
  json jt = tensor_to_json(t);
  CHECK(jt["dims"] == 2);
  CHECK(jt["max_orders"] == json::array({1, 1}));
  auto tback = parse_moment_payload(jt.dump());
  CHECK(std::get<MomentTensor>(tback) == t);
}

TEST_CASE("canonical dump is stable and newline terminated") {
  json j{{"b", 1}, {"a", json::array({1, 2})}};
  std::string s = canonical_dump(j);
  CHECK(s.back() == '\n');
  CHECK(s == canonical_dump(j));
  CHECK(s.find("\"a\"") < s.find("\"b\""));
}
