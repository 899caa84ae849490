#include "doctest.h"

#include "shepcor.h"

#include "json.hpp"

#include <cstring>
#include <string>
#include <vector>

namespace {

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  shc_string_free(s);
  return out;
}

std::string seq_value(const shc_seq* seq, size_t n) {
  char* s = nullptr;
  REQUIRE(shc_seq_value_str(seq, n, &s) == SHC_OK);
  return take(s);
}

struct SeqHandle {
  shc_seq* p = nullptr;
  ~SeqHandle() { shc_seq_free(p); }
};

struct TensorHandle {
  shc_tensor* p = nullptr;
  ~TensorHandle() { shc_tensor_free(p); }
};

} // namespace

TEST_CASE("version and reference tables") {
  CHECK(shc_version() != nullptr);
  CHECK(std::strlen(shc_version()) > 0);

  SeqHandle bern;
  REQUIRE(shc_bernoulli_numbers(12, &bern.p) == SHC_OK);
  CHECK(shc_seq_size(bern.p) == 13);
  CHECK(shc_seq_is_exact(bern.p) == 1);
  CHECK(seq_value(bern.p, 0) == "1");
  CHECK(seq_value(bern.p, 1) == "-1/2");
  CHECK(seq_value(bern.p, 4) == "-1/30");
  CHECK(seq_value(bern.p, 12) == "-691/2730");

  SeqHandle shep;
  REQUIRE(shc_sheppard_coefficients(4, &shep.p) == SHC_OK);
  CHECK(seq_value(shep.p, 2) == "-1/12");
  CHECK(seq_value(shep.p, 4) == "7/240");
}

TEST_CASE("errors set a message and leave outputs untouched") {
  shc_seq* out = reinterpret_cast<shc_seq*>(0x1);
  CHECK(shc_bernoulli_numbers(-1, &out) == SHC_ERR_INVALID);
  CHECK(out == reinterpret_cast<shc_seq*>(0x1));
  CHECK(std::strlen(shc_last_error()) > 0);
  CHECK(shc_bernoulli_numbers(2, nullptr) == SHC_ERR_INVALID);

  SeqHandle seq;
  const char* bad[] = {"1", "x"};
  CHECK(shc_seq_new_exact(bad, 2, &seq.p) == SHC_ERR_INVALID);
  const char* not_unit[] = {"2"};
  CHECK(shc_seq_new_exact(not_unit, 1, &seq.p) == SHC_ERR_INVALID);
}

TEST_CASE("sequence round trip through correct and uncorrect") {
  const char* values[] = {"1", "0", "1"};
  SeqHandle grouped;
  REQUIRE(shc_seq_new_exact(values, 3, &grouped.p) == SHC_OK);

  shc_grouping spec{"1", 0};
  SeqHandle raw;
  REQUIRE(shc_seq_correct(grouped.p, spec, SHC_TO_RAW, &raw.p) == SHC_OK);
  CHECK(seq_value(raw.p, 2) == "11/12");

  SeqHandle back;
  REQUIRE(shc_seq_correct(raw.p, spec, SHC_TO_GROUPED, &back.p) == SHC_OK);
  CHECK(seq_value(back.p, 2) == "1");

  shc_grouping lattice{"1/2", 4};
  SeqHandle draw;
  REQUIRE(shc_seq_correct(grouped.p, lattice, SHC_TO_RAW, &draw.p) == SHC_OK);
  SeqHandle dback;
  REQUIRE(shc_seq_correct(draw.p, lattice, SHC_TO_GROUPED, &dback.p) == SHC_OK);
  for (size_t n = 0; n < 3; ++n) CHECK(seq_value(dback.p, n) == seq_value(grouped.p, n));

  shc_grouping bad{"0", 0};
  SeqHandle none;
  CHECK(shc_seq_correct(grouped.p, bad, SHC_TO_RAW, &none.p) == SHC_ERR_INVALID);
}

TEST_CASE("float lane sequences") {
  double values[] = {1.0, 0.0, 1.0};
  SeqHandle seq;
  REQUIRE(shc_seq_new_float(values, 3, &seq.p) == SHC_OK);
  CHECK(shc_seq_is_exact(seq.p) == 0);

  shc_grouping spec{"1", 0};
  SeqHandle raw;
  REQUIRE(shc_seq_correct(seq.p, spec, SHC_TO_RAW, &raw.p) == SHC_OK);
  double v = 0.0;
  REQUIRE(shc_seq_value_double(raw.p, 2, &v) == SHC_OK);
  CHECK(v == doctest::Approx(11.0 / 12.0));
  char* s = nullptr;
  CHECK(shc_seq_value_str(raw.p, 2, &s) == SHC_ERR_INVALID);

  const char* exact_values[] = {"1", "1/3"};
  SeqHandle exact;
  REQUIRE(shc_seq_new_exact(exact_values, 2, &exact.p) == SHC_OK);
  SeqHandle converted;
  REQUIRE(shc_seq_to_float(exact.p, &converted.p) == SHC_OK);
  CHECK(shc_seq_is_exact(converted.p) == 0);
  REQUIRE(shc_seq_value_double(converted.p, 1, &v) == SHC_OK);
  CHECK(v == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("json moments dispatch to the right handle") {
  shc_seq* seq = nullptr;
  shc_tensor* tensor = nullptr;
  REQUIRE(shc_moments_from_json(R"(["1", "1/2"])", &seq, &tensor) == SHC_OK);
  CHECK(seq != nullptr);
  CHECK(tensor == nullptr);
  CHECK(shc_seq_to_json(seq, nullptr) == SHC_ERR_INVALID);
  char* text = nullptr;
  REQUIRE(shc_seq_to_json(seq, &text) == SHC_OK);
  CHECK(nlohmann::json::parse(take(text)) == nlohmann::json::parse(R"(["1","1/2"])"));
  shc_seq_free(seq);

  seq = nullptr;
  const char* tensor_text = R"({"values": [
    {"index": [0, 0], "value": "1"}, {"index": [0, 1], "value": "2"},
    {"index": [1, 0], "value": "3"}, {"index": [1, 1], "value": "4"}]})";
  REQUIRE(shc_moments_from_json(tensor_text, &seq, &tensor) == SHC_OK);
  CHECK(seq == nullptr);
  REQUIRE(tensor != nullptr);
  CHECK(shc_tensor_dims(tensor) == 2);
  CHECK(shc_tensor_is_exact(tensor) == 1);
  shc_tensor_free(tensor);

  CHECK(shc_moments_from_json("nope", &seq, &tensor) == SHC_ERR_INVALID);
}

TEST_CASE("tensor correction round trip") {
  const char* text = R"({"values": [
    {"index": [0, 0], "value": "1"}, {"index": [0, 1], "value": "1/2"},
    {"index": [1, 0], "value": "-1"}, {"index": [1, 1], "value": "1/3"},
    {"index": [2, 0], "value": "2"}, {"index": [2, 1], "value": "0"}]})";
  shc_seq* seq = nullptr;
  TensorHandle in;
  REQUIRE(shc_moments_from_json(text, &seq, &in.p) == SHC_OK);

  shc_grouping specs[] = {{"1", 2}, {"1/2", 0}};
  TensorHandle raw;
  REQUIRE(shc_tensor_correct(in.p, specs, 2, SHC_TO_RAW, &raw.p) == SHC_OK);
  TensorHandle back;
  REQUIRE(shc_tensor_correct(raw.p, specs, 2, SHC_TO_GROUPED, &back.p) == SHC_OK);

  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(shc_tensor_to_json(in.p, &a) == SHC_OK);
  REQUIRE(shc_tensor_to_json(back.p, &b) == SHC_OK);
  CHECK(take(a) == take(b));

  TensorHandle none;
  CHECK(shc_tensor_correct(in.p, specs, 1, SHC_TO_RAW, &none.p) == SHC_ERR_INVALID);

  TensorHandle floats;
  REQUIRE(shc_tensor_to_float(in.p, &floats.p) == SHC_OK);
  CHECK(shc_tensor_is_exact(floats.p) == 0);
  TensorHandle fraw;
  REQUIRE(shc_tensor_correct(floats.p, specs, 2, SHC_TO_RAW, &fraw.p) == SHC_OK);
}

TEST_CASE("histogram pipeline") {
  shc_histogram* hist = nullptr;
  REQUIRE(shc_histogram_from_csv("-1/2,1\n1/2,1\n", &hist) == SHC_OK);
  CHECK(shc_histogram_was_normalized(hist) == 1);
  char* width = nullptr;
  REQUIRE(shc_histogram_width(hist, &width) == SHC_OK);
  CHECK(take(width) == "1");

  SeqHandle grouped;
  REQUIRE(shc_histogram_moments(hist, 2, &grouped.p) == SHC_OK);
  CHECK(seq_value(grouped.p, 2) == "1/4");
  shc_histogram_free(hist);

  CHECK(shc_histogram_from_csv("1,2,3\n", &hist) == SHC_ERR_INVALID);
}

TEST_CASE("samples helpers") {
  double* xs = nullptr;
  size_t count = 0;
  REQUIRE(shc_samples_from_text("1\n-1\n", &xs, &count) == SHC_OK);
  REQUIRE(count == 2);
  SeqHandle mom;
  REQUIRE(shc_raw_moments_from_samples(xs, count, 2, &mom.p) == SHC_OK);
  double v = 0.0;
  REQUIRE(shc_seq_value_double(mom.p, 2, &v) == SHC_OK);
  CHECK(v == doctest::Approx(1.0));

  SeqHandle est;
  REQUIRE(shc_randomized_lattice_mean(xs, count, 0.5, 2, 200, 7, &est.p) == SHC_OK);
  SeqHandle est2;
  REQUIRE(shc_randomized_lattice_mean(xs, count, 0.5, 2, 200, 7, &est2.p) == SHC_OK);
  REQUIRE(shc_seq_value_double(est.p, 2, &v) == SHC_OK);
  double v2 = 0.0;
  REQUIRE(shc_seq_value_double(est2.p, 2, &v2) == SHC_OK);
  CHECK(v == v2);
  shc_doubles_free(xs);
}

TEST_CASE("rational canonicalization and formula labels") {
  char* s = nullptr;
  REQUIRE(shc_rational_canonical("0.5", &s) == SHC_OK);
  CHECK(take(s) == "1/2");
  REQUIRE(shc_rational_canonical("4/-6", &s) == SHC_OK);
  CHECK(take(s) == "-2/3");
  CHECK(shc_rational_canonical("abc", &s) == SHC_ERR_INVALID);

  shc_grouping cont{"1", 0};
  shc_grouping disc{"1", 3};
  CHECK(std::string(shc_formula_id(&cont, 1, SHC_TO_RAW)) == "Sh1");
  CHECK(std::string(shc_formula_id(&cont, 1, SHC_TO_GROUPED)) == "Sh3");
  CHECK(std::string(shc_formula_id(&disc, 1, SHC_TO_RAW)) == "shcdis");
  CHECK(std::string(shc_formula_id(&disc, 1, SHC_TO_GROUPED)) == "grdis");

  shc_grouping cc[] = {cont, cont};
  shc_grouping dd[] = {disc, disc};
  shc_grouping cd[] = {cont, disc};
  CHECK(std::string(shc_formula_id(cc, 2, SHC_TO_RAW)) == "shcmul2");
  CHECK(std::string(shc_formula_id(cc, 2, SHC_TO_GROUPED)) == "shcmul");
  CHECK(std::string(shc_formula_id(dd, 2, SHC_TO_RAW)) == "iv");
  CHECK(std::string(shc_formula_id(dd, 2, SHC_TO_GROUPED)) == "v");
  CHECK(std::string(shc_formula_id(cd, 2, SHC_TO_RAW)) == "mixed");
}

TEST_CASE("verification through the c api") {
  char* report = nullptr;
  REQUIRE(shc_verify("bernoulli", 42, 1e-8, &report) == SHC_OK);
  nlohmann::json j = nlohmann::json::parse(take(report));
  CHECK(j["passed"] == true);

  CHECK(shc_verify("bogus", 42, 1e-8, &report) == SHC_ERR_INVALID);

  // An unattainable tolerance makes the numeric suite fail; the report is
  // still produced alongside the error status.
  report = nullptr;
  CHECK(shc_verify("oracle-continuous", 42, 1e-300, &report) == SHC_ERR_VERIFY);
  REQUIRE(report != nullptr);
  nlohmann::json failed = nlohmann::json::parse(take(report));
  CHECK(failed["passed"] == false);

  const char* dist = R"({"h": "1", "m": 2, "support": [0, 1], "probs": ["1/2", "1/2"]})";
  REQUIRE(shc_verify_with_data("oracle-discrete", 42, 1e-8, dist, nullptr, nullptr, 0, nullptr,
                               0, nullptr, &report) == SHC_OK);
  nlohmann::json with = nlohmann::json::parse(take(report));
  CHECK(with["passed"] == true);

  REQUIRE(shc_verify_with_data("multivariate", 42, 1e-8, nullptr, "0,0,1/2\n1,1,1/2\n", "1", 2,
                               "1", 2, nullptr, &report) == SHC_OK);
  CHECK(nlohmann::json::parse(take(report))["passed"] == true);

  REQUIRE(shc_verify_with_data("mc", 42, 1e-8, nullptr, nullptr, nullptr, 0, nullptr, 0,
                               "0.25\n-1.5\n0.75\n2.25\n", &report) == SHC_OK);
  CHECK(nlohmann::json::parse(take(report))["passed"] == true);
}
