#include "shepcor.h"

#include "shepcor/io.hpp"
#include "shepcor/umbral.hpp"
#include "shepcor/verify.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <span>
#include <string>
#include <variant>

using namespace shepcor;

struct shc_seq {
  std::variant<MomentSeq, std::vector<double>> data;
};

struct shc_tensor {
  std::variant<MomentTensor, MomentTensorF> data;
};

struct shc_histogram {
  Histogram hist;
};

namespace {

thread_local std::string g_last_error;

void set_error(std::string message) { g_last_error = std::move(message); }

template <class F>
shc_status guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    set_error(e.what());
    return SHC_ERR_INVALID;
  } catch (...) {
    set_error("unknown error");
    return SHC_ERR_INVALID;
  }
}

shc_status require(bool ok, const char* message) {
  if (ok) return SHC_OK;
  set_error(message);
  return SHC_ERR_INVALID;
}

/* malloc'd copy so the caller can free() via shc_string_free */
char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

shc_status emit_string(const std::string& s, char** out) {
  char* copy = dup_string(s);
  if (copy == nullptr) return require(false, "out of memory");
  *out = copy;
  return SHC_OK;
}

GroupingSpec to_spec(const shc_grouping& grouping) {
  if (grouping.h == nullptr)
    throw std::invalid_argument("grouping width h is required");
  Rational h = parse_rational(grouping.h);
  if (grouping.m == 0) return GroupingSpec::continuous(std::move(h));
  if (grouping.m < 0 || grouping.m > std::numeric_limits<int>::max())
    throw std::invalid_argument("lattice divisor m must be >= 1");
  return GroupingSpec::discrete(std::move(h), static_cast<int>(grouping.m));
}

int checked_order(long max_order) {
  if (max_order < 0 || max_order > 4096)
    throw std::invalid_argument("order must be between 0 and 4096");
  return static_cast<int>(max_order);
}

MomentSeq transform_exact(const MomentSeq& in, const GroupingSpec& spec,
                          shc_direction direction) {
  if (direction == SHC_TO_RAW)
    return spec.is_discrete() ? correct_discrete(in, spec.h, spec.m)
                              : correct_continuous(in, spec.h);
  return spec.is_discrete() ? uncorrect_discrete(in, spec.h, spec.m)
                            : uncorrect_continuous(in, spec.h);
}

std::vector<double> transform_float(std::span<const double> in, const GroupingSpec& spec,
                                    shc_direction direction) {
  if (direction == SHC_TO_RAW)
    return spec.is_discrete() ? correct_discrete(in, spec.h, spec.m)
                              : correct_continuous(in, spec.h);
  return spec.is_discrete() ? uncorrect_discrete(in, spec.h, spec.m)
                            : uncorrect_continuous(in, spec.h);
}

Direction to_direction(shc_direction direction) {
  if (direction != SHC_TO_RAW && direction != SHC_TO_GROUPED)
    throw std::invalid_argument("bad direction value");
  return direction == SHC_TO_RAW ? Direction::ToRaw : Direction::ToGrouped;
}

} // namespace

extern "C" {

const char* shc_version(void) { return "0.1.0"; }

const char* shc_last_error(void) { return g_last_error.c_str(); }

void shc_string_free(char* s) { std::free(s); }

void shc_doubles_free(double* values) { std::free(values); }

void shc_seq_free(shc_seq* seq) { delete seq; }

void shc_tensor_free(shc_tensor* tensor) { delete tensor; }

void shc_histogram_free(shc_histogram* hist) { delete hist; }

shc_status shc_bernoulli_numbers(long max_order, shc_seq** out) {
  return guarded([&] {
    if (shc_status s = require(out != nullptr, "null output pointer")) return s;
    *out = new shc_seq{bernoulli_numbers(checked_order(max_order))};
    return SHC_OK;
  });
}

shc_status shc_sheppard_coefficients(long max_order, shc_seq** out) {
  return guarded([&] {
    if (shc_status s = require(out != nullptr, "null output pointer")) return s;
    *out = new shc_seq{sheppard_coeffs(checked_order(max_order))};
    return SHC_OK;
  });
}

shc_status shc_seq_new_exact(const char* const* values, size_t count, shc_seq** out) {
  return guarded([&] {
    if (shc_status s = require(out != nullptr && values != nullptr && count > 0,
                               "need a nonempty value array"))
      return s;
    std::vector<Rational> parsed;
    parsed.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (values[i] == nullptr) return require(false, "null value string");
      parsed.push_back(parse_rational(values[i]));
    }
    *out = new shc_seq{MomentSeq(std::move(parsed))};
    return SHC_OK;
  });
}

shc_status shc_seq_new_float(const double* values, size_t count, shc_seq** out) {
  return guarded([&] {
    if (shc_status s = require(out != nullptr && values != nullptr && count > 0,
                               "need a nonempty value array"))
      return s;
    std::vector<double> data(values, values + count);
    if (std::abs(data[0] - 1.0) > 1e-9)
      return require(false, "moment sequence must start with total mass one");
    *out = new shc_seq{std::move(data)};
    return SHC_OK;
  });
}

shc_status shc_moments_from_json(const char* text, shc_seq** out_seq, shc_tensor** out_tensor) {
  return guarded([&] {
    if (shc_status s = require(text != nullptr && out_seq != nullptr && out_tensor != nullptr,
                               "null argument"))
      return s;
    *out_seq = nullptr;
    *out_tensor = nullptr;
    MomentPayload payload = parse_moment_payload(text);
    switch (payload.index()) {
      case 0:
        *out_seq = new shc_seq{std::get<MomentSeq>(std::move(payload))};
        break;
      case 1:
        *out_seq = new shc_seq{std::get<std::vector<double>>(std::move(payload))};
        break;
      case 2:
        *out_tensor = new shc_tensor{std::get<MomentTensor>(std::move(payload))};
        break;
      default:
        *out_tensor = new shc_tensor{std::get<MomentTensorF>(std::move(payload))};
        break;
    }
    return SHC_OK;
  });
}

int shc_seq_is_exact(const shc_seq* seq) {
  return seq != nullptr && std::holds_alternative<MomentSeq>(seq->data) ? 1 : 0;
}

size_t shc_seq_size(const shc_seq* seq) {
  if (seq == nullptr) return 0;
  if (const auto* exact = std::get_if<MomentSeq>(&seq->data))
    return exact->values().size();
  return std::get<std::vector<double>>(seq->data).size();
}

shc_status shc_seq_value_str(const shc_seq* seq, size_t n, char** out) {
  return guarded([&] {
    if (shc_status s = require(seq != nullptr && out != nullptr, "null argument")) return s;
    const auto* exact = std::get_if<MomentSeq>(&seq->data);
    if (exact == nullptr) return require(false, "sequence is in float mode");
    if (n >= exact->values().size()) return require(false, "moment index out of range");
    return emit_string(format_rational((*exact)[static_cast<int>(n)]), out);
  });
}

shc_status shc_seq_value_double(const shc_seq* seq, size_t n, double* out) {
  return guarded([&] {
    if (shc_status s = require(seq != nullptr && out != nullptr, "null argument")) return s;
    if (n >= shc_seq_size(seq)) return require(false, "moment index out of range");
    if (const auto* exact = std::get_if<MomentSeq>(&seq->data))
      *out = to_double((*exact)[static_cast<int>(n)]);
    else
      *out = std::get<std::vector<double>>(seq->data)[n];
    return SHC_OK;
  });
}

shc_status shc_seq_to_json(const shc_seq* seq, char** out) {
  return guarded([&] {
    if (shc_status s = require(seq != nullptr && out != nullptr, "null argument")) return s;
    nlohmann::json j;
    if (const auto* exact = std::get_if<MomentSeq>(&seq->data))
      j = seq_to_json(*exact);
    else
      j = seq_to_json(std::span<const double>(std::get<std::vector<double>>(seq->data)));
    return emit_string(canonical_dump(j), out);
  });
}

shc_status shc_seq_correct(const shc_seq* in, shc_grouping grouping, shc_direction direction,
                           shc_seq** out) {
  return guarded([&] {
    if (shc_status s = require(in != nullptr && out != nullptr, "null argument")) return s;
    GroupingSpec spec = to_spec(grouping);
    to_direction(direction);
    if (const auto* exact = std::get_if<MomentSeq>(&in->data))
      *out = new shc_seq{transform_exact(*exact, spec, direction)};
    else
      *out = new shc_seq{transform_float(std::get<std::vector<double>>(in->data), spec,
                                         direction)};
    return SHC_OK;
  });
}

shc_status shc_seq_to_float(const shc_seq* seq, shc_seq** out) {
  return guarded([&] {
    if (shc_status s = require(seq != nullptr && out != nullptr, "null argument")) return s;
    if (const auto* exact = std::get_if<MomentSeq>(&seq->data)) {
      std::vector<double> values;
      values.reserve(exact->values().size());
      for (const Rational& v : exact->values()) values.push_back(to_double(v));
      *out = new shc_seq{std::move(values)};
    } else {
      *out = new shc_seq{std::get<std::vector<double>>(seq->data)};
    }
    return SHC_OK;
  });
}

int shc_tensor_is_exact(const shc_tensor* tensor) {
  return tensor != nullptr && std::holds_alternative<MomentTensor>(tensor->data) ? 1 : 0;
}

size_t shc_tensor_dims(const shc_tensor* tensor) {
  if (tensor == nullptr) return 0;
  if (const auto* exact = std::get_if<MomentTensor>(&tensor->data))
    return static_cast<size_t>(exact->dims());
  return static_cast<size_t>(std::get<MomentTensorF>(tensor->data).dims());
}

shc_status shc_tensor_to_json(const shc_tensor* tensor, char** out) {
  return guarded([&] {
    if (shc_status s = require(tensor != nullptr && out != nullptr, "null argument")) return s;
    nlohmann::json j;
    if (const auto* exact = std::get_if<MomentTensor>(&tensor->data))
      j = tensor_to_json(*exact);
    else
      j = tensor_to_json(std::get<MomentTensorF>(tensor->data));
    return emit_string(canonical_dump(j), out);
  });
}

shc_status shc_tensor_correct(const shc_tensor* in, const shc_grouping* specs, size_t nspecs,
                              shc_direction direction, shc_tensor** out) {
  return guarded([&] {
    if (shc_status s = require(in != nullptr && out != nullptr && specs != nullptr && nspecs > 0,
                               "null argument"))
      return s;
    AxisSpecs axis_specs;
    axis_specs.reserve(nspecs);
    for (size_t i = 0; i < nspecs; ++i) axis_specs.push_back(to_spec(specs[i]));
    Direction dir = to_direction(direction);
    if (const auto* exact = std::get_if<MomentTensor>(&in->data))
      *out = new shc_tensor{dir == Direction::ToRaw ? correct_mv(*exact, axis_specs)
                                                    : uncorrect_mv(*exact, axis_specs)};
    else {
      const auto& approx = std::get<MomentTensorF>(in->data);
      *out = new shc_tensor{dir == Direction::ToRaw ? correct_mv(approx, axis_specs)
                                                    : uncorrect_mv(approx, axis_specs)};
    }
    return SHC_OK;
  });
}

shc_status shc_tensor_to_float(const shc_tensor* tensor, shc_tensor** out) {
  return guarded([&] {
    if (shc_status s = require(tensor != nullptr && out != nullptr, "null argument")) return s;
    if (const auto* exact = std::get_if<MomentTensor>(&tensor->data)) {
      std::map<MultiIndex, double> values;
      for (const auto& [index, value] : exact->values())
        values.emplace(index, to_double(value));
      *out = new shc_tensor{MomentTensorF(std::move(values))};
    } else {
      *out = new shc_tensor{std::get<MomentTensorF>(tensor->data)};
    }
    return SHC_OK;
  });
}

shc_status shc_histogram_from_csv(const char* text, shc_histogram** out) {
  return guarded([&] {
    if (shc_status s = require(text != nullptr && out != nullptr, "null argument")) return s;
    *out = new shc_histogram{parse_histogram_csv(text)};
    return SHC_OK;
  });
}

shc_status shc_histogram_moments(const shc_histogram* hist, long max_order, shc_seq** out) {
  return guarded([&] {
    if (shc_status s = require(hist != nullptr && out != nullptr, "null argument")) return s;
    *out = new shc_seq{grouped_moments_from_histogram(hist->hist, checked_order(max_order))};
    return SHC_OK;
  });
}

shc_status shc_histogram_width(const shc_histogram* hist, char** out) {
  return guarded([&] {
    if (shc_status s = require(hist != nullptr && out != nullptr, "null argument")) return s;
    return emit_string(format_rational(hist->hist.width()), out);
  });
}

int shc_histogram_was_normalized(const shc_histogram* hist) {
  return hist != nullptr && hist->hist.was_normalized() ? 1 : 0;
}

shc_status shc_samples_from_text(const char* text, double** out, size_t* count) {
  return guarded([&] {
    if (shc_status s = require(text != nullptr && out != nullptr && count != nullptr,
                               "null argument"))
      return s;
    std::vector<double> samples = parse_samples(text);
    double* data = static_cast<double*>(std::malloc(samples.size() * sizeof(double)));
    if (data == nullptr) return require(false, "out of memory");
    std::memcpy(data, samples.data(), samples.size() * sizeof(double));
    *out = data;
    *count = samples.size();
    return SHC_OK;
  });
}

shc_status shc_raw_moments_from_samples(const double* samples, size_t count, long max_order,
                                        shc_seq** out) {
  return guarded([&] {
    if (shc_status s = require(samples != nullptr && out != nullptr, "null argument")) return s;
    *out = new shc_seq{raw_moments_from_samples(std::span<const double>(samples, count),
                                                checked_order(max_order))};
    return SHC_OK;
  });
}

shc_status shc_randomized_lattice_mean(const double* samples, size_t count, double h,
                                       long max_order, long trials, uint64_t seed,
                                       shc_seq** out) {
  return guarded([&] {
    if (shc_status s = require(samples != nullptr && out != nullptr, "null argument")) return s;
    if (trials < 1 || trials > 1000000)
      return require(false, "trials must be between 1 and 1000000");
    *out = new shc_seq{randomized_lattice_mean(std::span<const double>(samples, count), h,
                                               checked_order(max_order),
                                               static_cast<int>(trials), seed)};
    return SHC_OK;
  });
}

shc_status shc_rational_canonical(const char* text, char** out) {
  return guarded([&] {
    if (shc_status s = require(text != nullptr && out != nullptr, "null argument")) return s;
    return emit_string(format_rational(parse_rational(text)), out);
  });
}

const char* shc_formula_id(const shc_grouping* specs, size_t nspecs, shc_direction direction) {
  if (specs == nullptr || nspecs == 0) return "unknown";
  bool any_discrete = false, any_continuous = false;
  for (size_t i = 0; i < nspecs; ++i)
    (specs[i].m != 0 ? any_discrete : any_continuous) = true;
  bool to_raw = direction == SHC_TO_RAW;
  if (nspecs == 1) {
    if (any_discrete) return to_raw ? "shcdis" : "grdis";
    return to_raw ? "Sh1" : "Sh3";
  }
  if (any_discrete && any_continuous) return "mixed";
  if (any_discrete) return to_raw ? "iv" : "v";
  return to_raw ? "shcmul2" : "shcmul";
}

shc_status shc_verify(const char* suite, uint64_t seed, double tol, char** report_json) {
  return shc_verify_with_data(suite, seed, tol, nullptr, nullptr, nullptr, 0, nullptr, 0,
                              nullptr, report_json);
}

shc_status shc_verify_with_data(const char* suite, uint64_t seed, double tol,
                                const char* dist_json, const char* joint_csv,
                                const char* joint_h1, long joint_m1, const char* joint_h2,
                                long joint_m2, const char* samples_text, char** report_json) {
  return guarded([&]() -> shc_status {
    if (shc_status s = require(suite != nullptr && report_json != nullptr, "null argument"))
      return s;
    VerifyOptions options;
    options.seed = seed;
    options.tol = tol;
    if (dist_json != nullptr) options.dist = parse_lattice_json(dist_json);
    if (joint_csv != nullptr) {
      if (joint_h1 == nullptr || joint_h2 == nullptr)
        return require(false, "joint table needs h per axis");
      if (joint_m1 < 1 || joint_m2 < 1)
        return require(false, "joint table needs m >= 1 per axis");
      options.joint =
          parse_joint_csv(joint_csv, parse_rational(joint_h1), static_cast<int>(joint_m1),
                          parse_rational(joint_h2), static_cast<int>(joint_m2));
    }
    if (samples_text != nullptr) options.samples = parse_samples(samples_text);

    VerifyReport report = run_suite(suite, options);
    if (shc_status s = emit_string(canonical_dump(report_to_json(report)), report_json))
      return s;
    if (report.passed()) return SHC_OK;
    set_error("verification suite reported failures");
    return SHC_ERR_VERIFY;
  });
}

} // extern "C"
