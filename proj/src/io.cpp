#include "shepcor/io.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace shepcor {

namespace {

using nlohmann::json;

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

/// Rows of exactly `arity` fields; a non-numeric first row is a header.
std::vector<std::vector<std::string>> csv_rows(const std::string& text, std::size_t arity,
                                               const char* what) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (is_blank(line)) continue;
    std::vector<std::string> fields = split_fields(line);
    if (fields.size() != arity)
      throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(arity) +
                                  " comma-separated fields, got '" + line + "'");
    if (first) {
      first = false;
      bool header = false;
      for (const std::string& f : fields) {
        try {
          parse_rational(f);
        } catch (const std::invalid_argument&) {
          header = true;
        }
      }
      if (header) continue;
    }
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw std::invalid_argument(std::string(what) + ": no data rows");
  return rows;
}

long long parse_support_integer(const std::string& field, const char* what) {
  Rational v = parse_rational(field);
  if (denominator(v) != 1)
    throw std::invalid_argument(std::string(what) + ": support point '" + field +
                                "' is not an integer");
  Integer num = numerator(v);
  if (num > std::numeric_limits<long long>::max() || num < std::numeric_limits<long long>::min())
    throw std::invalid_argument(std::string(what) + ": support point out of range");
  return num.convert_to<long long>();
}

json parse_json_text(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw std::invalid_argument(std::string(what) + ": malformed JSON");
  return j;
}

Rational rational_from_json(const json& v, const char* what) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  // doubles convert exactly: every finite double is a dyadic rational
  if (v.is_number_float()) return Rational(v.get<double>());
  throw std::invalid_argument(std::string(what) + ": expected a number or 'p/q' string");
}

enum class Lane { Unknown, Exact, Float };

void note_lane(Lane& lane, const json& v, const char* what) {
  Lane here;
  if (v.is_string())
    here = Lane::Exact;
  else if (v.is_number())
    here = Lane::Float;
  else
    throw std::invalid_argument(std::string(what) + ": expected a number or 'p/q' string");
  if (lane == Lane::Unknown) lane = here;
  if (lane != here)
    throw std::invalid_argument(std::string(what) +
                                ": exact strings and plain numbers must not be mixed");
}

MomentPayload seq_from_json_array(const json& arr) {
  if (arr.empty()) throw std::invalid_argument("moment sequence must not be empty");
  Lane lane = Lane::Unknown;
  for (const json& v : arr) note_lane(lane, v, "moments");
  if (lane == Lane::Exact) {
    std::vector<Rational> values;
    values.reserve(arr.size());
    for (const json& v : arr) values.push_back(parse_rational(v.get<std::string>()));
    return MomentSeq(std::move(values));
  }
  std::vector<double> values;
  values.reserve(arr.size());
  for (const json& v : arr) values.push_back(v.get<double>());
  if (std::abs(values[0] - 1.0) > 1e-9)
    throw std::invalid_argument("moment sequence must start with total mass one");
  return values;
}

MomentPayload tensor_from_json_object(const json& obj) {
  const json& entries = obj.at("values");
  if (!entries.is_array() || entries.empty())
    throw std::invalid_argument("tensor 'values' must be a nonempty array");
  Lane lane = Lane::Unknown;
  for (const json& e : entries) {
    if (!e.is_object() || !e.contains("index") || !e.contains("value"))
      throw std::invalid_argument("tensor entries need 'index' and 'value'");
    note_lane(lane, e.at("value"), "values");
  }
  auto read_index = [](const json& e) {
    if (!e.at("index").is_array())
      throw std::invalid_argument("tensor index must be an array of integers");
    std::vector<int> orders;
    for (const json& v : e.at("index")) {
      if (!v.is_number_integer()) throw std::invalid_argument("tensor index must be integers");
      orders.push_back(v.get<int>());
    }
    return MultiIndex(std::move(orders));
  };
  if (lane == Lane::Exact) {
    std::map<MultiIndex, Rational> values;
    for (const json& e : entries)
      if (!values.emplace(read_index(e), parse_rational(e.at("value").get<std::string>())).second)
        throw std::invalid_argument("tensor index listed twice");
    return MomentTensor(std::move(values));
  }
  std::map<MultiIndex, double> values;
  for (const json& e : entries)
    if (!values.emplace(read_index(e), e.at("value").get<double>()).second)
      throw std::invalid_argument("tensor index listed twice");
  return MomentTensorF(std::move(values));
}

} // namespace

Histogram parse_histogram_csv(const std::string& text, double spacing_tol) {
  std::vector<Rational> midpoints, freqs;
  for (const auto& row : csv_rows(text, 2, "histogram")) {
    midpoints.push_back(parse_rational(row[0]));
    freqs.push_back(parse_rational(row[1]));
  }
  return Histogram(std::move(midpoints), std::move(freqs), spacing_tol);
}

std::vector<double> parse_samples(const std::string& text) {
  std::vector<double> samples;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (is_blank(line)) continue;
    std::size_t consumed = 0;
    double value;
    try {
      value = std::stod(line, &consumed);
    } catch (const std::exception&) {
      throw std::invalid_argument("samples: bad value '" + line + "'");
    }
    if (line.find_first_not_of(" \t", consumed) != std::string::npos)
      throw std::invalid_argument("samples: bad value '" + line + "'");
    samples.push_back(value);
  }
  if (samples.empty()) throw std::invalid_argument("samples: no values");
  return samples;
}

BivariateLatticeDist parse_joint_csv(const std::string& text, const Rational& h1, int m1,
                                     const Rational& h2, int m2) {
  BivariateLatticeDist dist;
  dist.h1 = h1;
  dist.h2 = h2;
  dist.m1 = m1;
  dist.m2 = m2;
  for (const auto& row : csv_rows(text, 3, "joint table")) {
    dist.support.push_back({parse_support_integer(row[0], "joint table"),
                            parse_support_integer(row[1], "joint table")});
    dist.probs.push_back(parse_rational(row[2]));
  }
  dist.validate_and_normalize();
  return dist;
}

LatticeDist parse_lattice_json(const std::string& text) {
  json j = parse_json_text(text, "lattice distribution");
  if (!j.is_object() || !j.contains("h") || !j.contains("m") || !j.contains("support") ||
      !j.contains("probs"))
    throw std::invalid_argument("lattice distribution needs h, m, support, probs");
  LatticeDist dist;
  dist.h = rational_from_json(j.at("h"), "lattice distribution h");
  if (!j.at("m").is_number_integer())
    throw std::invalid_argument("lattice distribution m must be an integer");
  dist.m = j.at("m").get<int>();
  if (!j.at("support").is_array() || !j.at("probs").is_array())
    throw std::invalid_argument("lattice support and probs must be arrays");
  for (const json& v : j.at("support")) {
    if (!v.is_number_integer())
      throw std::invalid_argument("lattice support must be integers");
    dist.support.push_back(v.get<long long>());
  }
  for (const json& v : j.at("probs"))
    dist.probs.push_back(rational_from_json(v, "lattice distribution probs"));
  dist.validate_and_normalize();
  return dist;
}

MomentPayload parse_moment_payload(const std::string& text) {
  json j = parse_json_text(text, "moment input");
  if (j.is_array()) return seq_from_json_array(j);
  if (j.is_object()) {
    if (j.contains("moments")) {
      if (!j.at("moments").is_array())
        throw std::invalid_argument("'moments' must be an array");
      return seq_from_json_array(j.at("moments"));
    }
    if (j.contains("values")) return tensor_from_json_object(j);
  }
  throw std::invalid_argument("moment input must be an array, or an object with "
                              "'moments' or tensor 'values'");
}

json seq_to_json(const MomentSeq& seq) {
  json arr = json::array();
  for (const Rational& v : seq.values()) arr.push_back(format_rational(v));
  return arr;
}

json seq_to_json(std::span<const double> seq) {
  json arr = json::array();
  for (double v : seq) arr.push_back(v);
  return arr;
}

namespace {

template <class T, class Render>
json tensor_to_json_impl(const BasicMomentTensor<T>& tensor, Render render) {
  json out;
  out["dims"] = tensor.dims();
  out["max_orders"] = tensor.max_orders();
  json entries = json::array();
  for (const auto& [index, value] : tensor.values()) {
    json e;
    e["index"] = index.orders();
    e["value"] = render(value);
    entries.push_back(std::move(e));
  }
  out["values"] = std::move(entries);
  return out;
}

} // namespace

json tensor_to_json(const MomentTensor& tensor) {
  return tensor_to_json_impl(tensor, [](const Rational& v) { return json(format_rational(v)); });
}

json tensor_to_json(const MomentTensorF& tensor) {
  return tensor_to_json_impl(tensor, [](double v) { return json(v); });
}

std::string canonical_dump(const nlohmann::json& value) {
  return value.dump(2) + "\n";
}

} // namespace shepcor
