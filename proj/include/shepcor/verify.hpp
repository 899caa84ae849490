#pragma once

#include "shepcor/grouping.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace shepcor {

/// One invariant check: exact identities report the number of failing
/// instances as the residual, numeric ones their worst absolute deviation.
struct VerifyCheck {
  std::string name;
  bool passed = false;
  double residual = 0.0;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  double tol = 0.0;
  std::vector<VerifyCheck> checks;

  bool passed() const;
};

/// User-supplied data joins the built-in corpora: a lattice distribution in
/// the discrete oracle suite, a joint table in the multivariate suite,
/// samples in the Monte Carlo suite.
struct VerifyOptions {
  std::uint64_t seed = 42;
  double tol = 1e-8;
  std::optional<LatticeDist> dist;
  std::optional<BivariateLatticeDist> joint;
  std::optional<std::vector<double>> samples;
};

/// Canonical suite order as run by "all".
const std::vector<std::string>& verify_suites();

/// Throws std::invalid_argument for an unknown suite id.
VerifyReport run_suite(const std::string& suite, const VerifyOptions& options = {});

nlohmann::json report_to_json(const VerifyReport& report);

} // namespace shepcor
