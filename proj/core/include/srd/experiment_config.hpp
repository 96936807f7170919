#pragma once

#include <cstdint>
#include <string>

#include "srd/distribution.hpp"
#include "srd/simulation.hpp"

namespace srd {

/// Run parameters in a flat key=value text form (one pair per line, '#'
/// comments). parse(serialize(c)) == c for every valid config.
struct ExperimentConfig {
  double omega = 0.35;
  double alpha = 0.3;
  double rho = 0.3;
  int n = 2000;
  int trials = 50;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string distribution = "gaussian:0,1";
  std::string basis_kind = "identity";  // identity | haar
  std::string output_path;

  std::string serialize() const;
  static ExperimentConfig parse(const std::string& text);

  DistributionSpec make_distribution() const;
  BasisKind make_basis_kind() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Textual distribution forms:
///   gaussian:MEAN,VARIANCE
///   discrete:v1,v2,...              (equiprobable)
///   discrete:v1,v2,...@w1,w2,...
DistributionSpec parse_distribution(const std::string& text);

}  // namespace srd
