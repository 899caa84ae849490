#include "shepcor.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

struct SeqDeleter {
  void operator()(shc_seq* p) const { shc_seq_free(p); }
};
struct TensorDeleter {
  void operator()(shc_tensor* p) const { shc_tensor_free(p); }
};
struct HistDeleter {
  void operator()(shc_histogram* p) const { shc_histogram_free(p); }
};
struct StrDeleter {
  void operator()(char* p) const { shc_string_free(p); }
};

using SeqPtr = std::unique_ptr<shc_seq, SeqDeleter>;
using TensorPtr = std::unique_ptr<shc_tensor, TensorDeleter>;
using HistPtr = std::unique_ptr<shc_histogram, HistDeleter>;
using StrPtr = std::unique_ptr<char, StrDeleter>;

[[noreturn]] void fail(const std::string& message) { throw std::runtime_error(message); }

void check(shc_status status) {
  if (status != SHC_OK) fail(shc_last_error());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) fail("cannot write '" + path + "'");
}

/// Canonical file rendering: two-space indent, sorted keys, one trailing
/// newline. Identical flags and inputs give identical bytes.
std::string canonical(const json& value) { return value.dump(2) + "\n"; }

json seq_json(const shc_seq* seq) {
  char* raw = nullptr;
  check(shc_seq_to_json(seq, &raw));
  StrPtr guard(raw);
  return json::parse(raw);
}

json tensor_json(const shc_tensor* tensor) {
  char* raw = nullptr;
  check(shc_tensor_to_json(tensor, &raw));
  StrPtr guard(raw);
  return json::parse(raw);
}

std::string canonical_rational(const std::string& text) {
  char* raw = nullptr;
  check(shc_rational_canonical(text.c_str(), &raw));
  StrPtr guard(raw);
  return raw;
}

struct TransformArgs {
  std::string input;
  std::string as_kind = "auto";
  std::vector<std::string> h;
  std::vector<long> m;
  int order = -1;
  std::string mode;
  std::string output;
};

void add_transform_flags(CLI::App* sub, TransformArgs& args) {
  sub->add_option("-i,--input", args.input, "moment JSON or histogram CSV file")->required();
  sub->add_option("--h", args.h, "class width per axis, exact decimal or p/q")->type_size(1);
  sub->add_option("--m", args.m, "lattice divisor per axis, 0 = continuous parent")
      ->type_size(1);
  sub->add_option("--order", args.order, "highest moment order to use");
  sub->add_option("--mode", args.mode, "arithmetic lane")
      ->check(CLI::IsMember({"exact", "float"}));
  sub->add_option("--as", args.as_kind, "input kind instead of sniffing")
      ->check(CLI::IsMember({"auto", "moments", "histogram"}));
  sub->add_option("-o,--output", args.output, "output file (default stdout)");
}

SeqPtr truncate_seq(SeqPtr seq, int order) {
  std::size_t want = static_cast<std::size_t>(order) + 1;
  std::size_t have = shc_seq_size(seq.get());
  if (want > have)
    fail("--order " + std::to_string(order) + " exceeds the " + std::to_string(have - 1) +
         " orders available in the input");
  if (want == have) return seq;
  shc_seq* cut = nullptr;
  if (shc_seq_is_exact(seq.get())) {
    std::vector<std::string> values;
    std::vector<const char*> pointers;
    for (std::size_t n = 0; n < want; ++n) {
      char* raw = nullptr;
      check(shc_seq_value_str(seq.get(), n, &raw));
      StrPtr guard(raw);
      values.emplace_back(raw);
    }
    for (const std::string& v : values) pointers.push_back(v.c_str());
    check(shc_seq_new_exact(pointers.data(), pointers.size(), &cut));
  } else {
    std::vector<double> values(want);
    for (std::size_t n = 0; n < want; ++n)
      check(shc_seq_value_double(seq.get(), n, &values[n]));
    check(shc_seq_new_float(values.data(), values.size(), &cut));
  }
  return SeqPtr(cut);
}

int run_bernoulli(int order, bool as_json, const std::string& output) {
  shc_seq* braw = nullptr;
  check(shc_bernoulli_numbers(order, &braw));
  SeqPtr bernoulli(braw);
  shc_seq* craw = nullptr;
  check(shc_sheppard_coefficients(order, &craw));
  SeqPtr coefficients(craw);

  if (as_json) {
    json out;
    out["order"] = order;
    out["bernoulli"] = seq_json(bernoulli.get());
    out["sheppard_coefficients"] = seq_json(coefficients.get());
    write_output(output, canonical(out));
    return 0;
  }

  std::vector<std::string> b_col, c_col;
  std::size_t b_width = 0;
  for (int n = 0; n <= order; ++n) {
    char* raw = nullptr;
    check(shc_seq_value_str(bernoulli.get(), static_cast<std::size_t>(n), &raw));
    StrPtr b(raw);
    b_col.emplace_back(b.get());
    b_width = std::max(b_width, b_col.back().size());
    check(shc_seq_value_str(coefficients.get(), static_cast<std::size_t>(n), &raw));
    StrPtr c(raw);
    c_col.emplace_back(c.get());
  }

  std::ostringstream table;
  table << "  n  B_n" << std::string(b_width > 3 ? b_width - 3 : 0, ' ')
        << "  (2^(1-n)-1)*B_n\n";
  for (int n = 0; n <= order; ++n) {
    std::ostringstream line;
    line.width(3);
    line << n;
    table << line.str() << "  " << b_col[static_cast<std::size_t>(n)]
          << std::string(b_width - b_col[static_cast<std::size_t>(n)].size(), ' ') << "  "
          << c_col[static_cast<std::size_t>(n)] << "\n";
  }
  write_output(output, table.str());
  return 0;
}

int run_histogram_correct(const TransformArgs& args, const std::string& text) {
  shc_histogram* hraw = nullptr;
  check(shc_histogram_from_csv(text.c_str(), &hraw));
  HistPtr hist(hraw);

  char* wraw = nullptr;
  check(shc_histogram_width(hist.get(), &wraw));
  StrPtr width(wraw);
  std::string h = width.get();
  if (!args.h.empty()) {
    if (args.h.size() != 1) fail("histogram input takes a single --h");
    std::string given = canonical_rational(args.h[0]);
    if (given != h)
      fail("--h " + given + " does not match the class width " + h +
           " inferred from the midpoints");
  }
  long m = 0;
  if (!args.m.empty()) {
    if (args.m.size() != 1) fail("histogram input takes a single --m");
    m = args.m[0];
  }

  if (shc_histogram_was_normalized(hist.get()))
    std::fprintf(stderr, "note: frequencies were rescaled to sum to one\n");
  std::fprintf(stderr,
               "warning: grouped moments come from the frequency table, standing in for "
               "lattice-averaged grouped moments\n");

  int order = args.order >= 0 ? args.order : 4;
  shc_seq* graw = nullptr;
  check(shc_histogram_moments(hist.get(), order, &graw));
  SeqPtr grouped(graw);
  if (args.mode == "float") {
    shc_seq* converted = nullptr;
    check(shc_seq_to_float(grouped.get(), &converted));
    grouped.reset(converted);
  }

  shc_grouping spec{h.c_str(), m};
  shc_seq* rraw = nullptr;
  check(shc_seq_correct(grouped.get(), spec, SHC_TO_RAW, &rraw));
  SeqPtr result(rraw);

  json out;
  out["direction"] = "correct";
  out["formula"] = shc_formula_id(&spec, 1, SHC_TO_RAW);
  out["grouped_moments"] = seq_json(grouped.get());
  out["h"] = h;
  out["m"] = m;
  out["mode"] = shc_seq_is_exact(result.get()) ? "exact" : "float";
  out["moments"] = seq_json(result.get());
  write_output(args.output, canonical(out));
  return 0;
}

int run_transform(const TransformArgs& args, shc_direction direction) {
  std::string text = read_file(args.input);
  bool histogram_input;
  if (args.as_kind == "histogram") {
    histogram_input = true;
  } else if (args.as_kind == "moments") {
    histogram_input = false;
  } else {
    std::size_t pos = text.find_first_not_of(" \t\r\n");
    char first = pos == std::string::npos ? '\0' : text[pos];
    histogram_input = first != '{' && first != '[';
  }

  if (histogram_input) {
    if (direction != SHC_TO_RAW)
      fail("a histogram holds grouped data; uncorrect expects raw moments");
    return run_histogram_correct(args, text);
  }

  shc_seq* sraw = nullptr;
  shc_tensor* traw = nullptr;
  check(shc_moments_from_json(text.c_str(), &sraw, &traw));
  SeqPtr seq(sraw);
  TensorPtr tensor(traw);

  if (args.h.empty()) fail("--h is required for moment inputs");
  bool input_exact =
      seq ? shc_seq_is_exact(seq.get()) != 0 : shc_tensor_is_exact(tensor.get()) != 0;
  std::string mode = args.mode.empty() ? (input_exact ? "exact" : "float") : args.mode;
  if (mode == "exact" && !input_exact)
    fail("exact mode needs 'p/q' moment strings in the input");
  const char* direction_name = direction == SHC_TO_RAW ? "correct" : "uncorrect";

  if (seq) {
    if (args.h.size() != 1) fail("univariate input takes a single --h");
    if (args.m.size() > 1) fail("univariate input takes a single --m");
    long m = args.m.empty() ? 0 : args.m[0];
    std::string h = canonical_rational(args.h[0]);

    if (args.order >= 0) seq = truncate_seq(std::move(seq), args.order);
    if (mode == "float" && input_exact) {
      shc_seq* converted = nullptr;
      check(shc_seq_to_float(seq.get(), &converted));
      seq.reset(converted);
    }

    shc_grouping spec{h.c_str(), m};
    shc_seq* rraw = nullptr;
    check(shc_seq_correct(seq.get(), spec, direction, &rraw));
    SeqPtr result(rraw);

    json out;
    out["direction"] = direction_name;
    out["formula"] = shc_formula_id(&spec, 1, direction);
    out["h"] = h;
    out["m"] = m;
    out["mode"] = mode;
    out["moments"] = seq_json(result.get());
    write_output(args.output, canonical(out));
    return 0;
  }

  std::size_t dims = shc_tensor_dims(tensor.get());
  if (args.order >= 0) fail("--order applies to univariate inputs only");
  std::vector<std::string> hs = args.h;
  if (hs.size() == 1 && dims > 1) hs.assign(dims, hs[0]);
  if (hs.size() != dims)
    fail("need one --h per axis (" + std::to_string(dims) + " axes)");
  std::vector<long> ms = args.m;
  if (ms.empty()) ms.assign(dims, 0);
  if (ms.size() == 1 && dims > 1) ms.assign(dims, ms[0]);
  if (ms.size() != dims) fail("need one --m per axis (" + std::to_string(dims) + " axes)");
  for (std::string& h : hs) h = canonical_rational(h);

  if (mode == "float" && input_exact) {
    shc_tensor* converted = nullptr;
    check(shc_tensor_to_float(tensor.get(), &converted));
    tensor.reset(converted);
  }

  std::vector<shc_grouping> specs;
  specs.reserve(dims);
  for (std::size_t i = 0; i < dims; ++i) specs.push_back({hs[i].c_str(), ms[i]});
  shc_tensor* rraw = nullptr;
  check(shc_tensor_correct(tensor.get(), specs.data(), specs.size(), direction, &rraw));
  TensorPtr result(rraw);

  json out = tensor_json(result.get());
  out["direction"] = direction_name;
  out["formula"] = shc_formula_id(specs.data(), specs.size(), direction);
  out["h"] = hs;
  out["m"] = ms;
  out["mode"] = mode;
  write_output(args.output, canonical(out));
  return 0;
}

struct VerifyArgs {
  std::string suite;
  std::uint64_t seed = 42;
  double tol = 1e-8;
  bool as_json = false;
  std::string dist_path, joint_path, samples_path, output;
  std::vector<std::string> h;
  std::vector<long> m;
};

int run_verify(const VerifyArgs& args) {
  std::string dist_text, joint_text, samples_text;
  const char* dist_c = nullptr;
  const char* joint_c = nullptr;
  const char* samples_c = nullptr;
  std::string h1, h2;
  long m1 = 0, m2 = 0;
  if (!args.dist_path.empty()) {
    dist_text = read_file(args.dist_path);
    dist_c = dist_text.c_str();
  }
  if (!args.joint_path.empty()) {
    if (args.h.size() != 2 || args.m.size() != 2)
      fail("--joint needs --h and --m twice, once per axis");
    joint_text = read_file(args.joint_path);
    joint_c = joint_text.c_str();
    h1 = args.h[0];
    h2 = args.h[1];
    m1 = args.m[0];
    m2 = args.m[1];
  }
  if (!args.samples_path.empty()) {
    samples_text = read_file(args.samples_path);
    samples_c = samples_text.c_str();
  }

  char* rraw = nullptr;
  shc_status status = shc_verify_with_data(
      args.suite.c_str(), args.seed, args.tol, dist_c, joint_c,
      h1.empty() ? nullptr : h1.c_str(), m1, h2.empty() ? nullptr : h2.c_str(), m2, samples_c,
      &rraw);
  if (status == SHC_ERR_INVALID) fail(shc_last_error());
  StrPtr report_text(rraw);

  if (args.as_json) {
    write_output(args.output, report_text.get());
  } else {
    json report = json::parse(report_text.get());
    std::ostringstream out;
    out << "suite " << report.at("suite").get<std::string>() << " (seed "
        << report.at("seed").get<std::uint64_t>() << ", tol "
        << report.at("tol").get<double>() << ")\n";
    int passed = 0;
    for (const json& c : report.at("checks")) {
      bool ok = c.at("passed").get<bool>();
      passed += ok ? 1 : 0;
      out << (ok ? "  pass  " : "  FAIL  ") << c.at("name").get<std::string>();
      double residual = c.at("residual").get<double>();
      if (residual != 0.0) out << "  (residual " << residual << ")";
      out << "\n";
    }
    out << passed << " of " << report.at("checks").size() << " checks passed\n";
    write_output(args.output, out.str());
  }
  return status == SHC_OK ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Sheppard corrections between grouped and raw moments"};
  app.set_help_flag("--help", "print help and exit");
  app.set_version_flag("--version", shc_version());
  app.require_subcommand(1);

  auto* bernoulli = app.add_subcommand("bernoulli", "print Bernoulli numbers and correction "
                                                    "coefficients");
  bernoulli->set_help_flag("--help", "print help and exit");
  int order = 12;
  bool bernoulli_json = false;
  std::string bernoulli_output;
  bernoulli->add_option("--order", order, "highest index to print");
  bernoulli->add_flag("--json", bernoulli_json, "JSON output");
  bernoulli->add_option("-o,--output", bernoulli_output, "output file (default stdout)");

  auto* correct = app.add_subcommand("correct", "grouped moments -> raw moments");
  correct->set_help_flag("--help", "print help and exit");
  TransformArgs correct_args;
  add_transform_flags(correct, correct_args);

  auto* uncorrect = app.add_subcommand("uncorrect", "raw moments -> grouped moments");
  uncorrect->set_help_flag("--help", "print help and exit");
  TransformArgs uncorrect_args;
  add_transform_flags(uncorrect, uncorrect_args);

  auto* verify = app.add_subcommand("verify", "run a self-check suite");
  verify->set_help_flag("--help", "print help and exit");
  VerifyArgs verify_args;
  verify
      ->add_option("suite", verify_args.suite,
                   "bernoulli | roundtrip | oracle-discrete | oracle-continuous | "
                   "multivariate | mc | all")
      ->required();
  verify->add_option("--seed", verify_args.seed, "random seed");
  verify->add_option("--tol", verify_args.tol, "numeric tolerance");
  verify->add_flag("--json", verify_args.as_json, "JSON report");
  verify->add_option("--dist", verify_args.dist_path,
                     "lattice distribution JSON joining the discrete oracle corpus");
  verify->add_option("--joint", verify_args.joint_path,
                     "joint table CSV joining the multivariate corpus");
  verify->add_option("--samples", verify_args.samples_path,
                     "sample file joining the Monte Carlo suite");
  verify->add_option("--h", verify_args.h, "class width per joint-table axis")->type_size(1);
  verify->add_option("--m", verify_args.m, "lattice divisor per joint-table axis")
      ->type_size(1);
  verify->add_option("-o,--output", verify_args.output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (bernoulli->parsed()) return run_bernoulli(order, bernoulli_json, bernoulli_output);
    if (correct->parsed()) return run_transform(correct_args, SHC_TO_RAW);
    if (uncorrect->parsed()) return run_transform(uncorrect_args, SHC_TO_GROUPED);
    if (verify->parsed()) return run_verify(verify_args);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
