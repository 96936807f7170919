#include "srd/experiment_config.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace srd {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> parse_number_list(const std::string& text,
                                      const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    double v;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument(what + ": bad number '" + item + "'");
    }
    if (pos != item.size()) {
      throw std::invalid_argument(what + ": bad number '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument(what + ": empty list");
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

DistributionSpec parse_distribution(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "gaussian") {
    const auto nums = parse_number_list(args, "gaussian");
    if (nums.size() != 2) {
      throw std::invalid_argument("gaussian: expected MEAN,VARIANCE");
    }
    return DistributionSpec::gaussian(nums[0], nums[1]);
  }
  if (kind == "discrete") {
    const auto at = args.find('@');
    const auto values = parse_number_list(args.substr(0, at), "discrete values");
    std::vector<double> weights;
    if (at != std::string::npos) {
      weights = parse_number_list(args.substr(at + 1), "discrete weights");
    }
    return DistributionSpec::discrete(values, weights);
  }
  throw std::invalid_argument(
      "unknown distribution '" + text +
      "' (expected gaussian:M,V or discrete:v1,v2[,..][@w1,w2,..])");
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream out;
  out << "omega=" << format_double(omega) << "\n";
  out << "alpha=" << format_double(alpha) << "\n";
  out << "rho=" << format_double(rho) << "\n";
  out << "n=" << n << "\n";
  out << "trials=" << trials << "\n";
  if (seed_set) out << "seed=" << seed << "\n";
  out << "distribution=" << distribution << "\n";
  out << "basis=" << basis_kind << "\n";
  if (!output_path.empty()) out << "out=" << output_path << "\n";
  return out.str();
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "omega") {
        cfg.omega = std::stod(value);
      } else if (key == "alpha") {
        cfg.alpha = std::stod(value);
      } else if (key == "rho") {
        cfg.rho = std::stod(value);
      } else if (key == "n") {
        cfg.n = std::stoi(value);
      } else if (key == "trials") {
        cfg.trials = std::stoi(value);
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
        cfg.seed_set = true;
      } else if (key == "distribution") {
        cfg.distribution = value;
      } else if (key == "basis") {
        cfg.basis_kind = value;
      } else if (key == "out") {
        cfg.output_path = value;
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": bad value for '" + key + "'");
    }
  }
  // fail fast on values the home modules would reject
  cfg.make_distribution();
  cfg.make_basis_kind();
  return cfg;
}

DistributionSpec ExperimentConfig::make_distribution() const {
  return parse_distribution(distribution);
}

BasisKind ExperimentConfig::make_basis_kind() const {
  if (basis_kind == "identity") return BasisKind::identity;
  if (basis_kind == "haar") return BasisKind::haar;
  throw std::invalid_argument("basis must be 'identity' or 'haar', got '" +
                              basis_kind + "'");
}

}  // namespace srd
