#pragma once

#include "shepcor/grouping.hpp"

#include "json.hpp"

#include <string>
#include <variant>
#include <vector>

namespace shepcor {

/// `midpoint,frequency` per line, optional header, exact decimal parsing.
Histogram parse_histogram_csv(const std::string& text, double spacing_tol = 1e-9);

/// One sample value per line; blank lines are skipped.
std::vector<double> parse_samples(const std::string& text);

/// `s1,s2,prob` per line, optional header; the grouping parameters are
/// supplied by the caller since the table format does not carry them.
BivariateLatticeDist parse_joint_csv(const std::string& text, const Rational& h1, int m1,
                                     const Rational& h2, int m2);

/// {"h": ..., "m": ..., "support": [...], "probs": [...]}; h and probs may
/// be "p/q" strings or numbers (numbers convert exactly).
LatticeDist parse_lattice_json(const std::string& text);

/// Any moment input: a bare array, an object with "moments", or a tensor
/// object with "values". String entries give the exact lane, numeric
/// entries the float lane; mixing the two is rejected.
using MomentPayload = std::variant<MomentSeq, std::vector<double>, MomentTensor, MomentTensorF>;
MomentPayload parse_moment_payload(const std::string& text);

nlohmann::json seq_to_json(const MomentSeq& seq);
nlohmann::json seq_to_json(std::span<const double> seq);
nlohmann::json tensor_to_json(const MomentTensor& tensor);
nlohmann::json tensor_to_json(const MomentTensorF& tensor);

/// Stable rendering used for all file output: two-space indent, sorted
/// keys, trailing newline. Byte-identical across runs.
std::string canonical_dump(const nlohmann::json& value);

} // namespace shepcor
