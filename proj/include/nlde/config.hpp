#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "nlde/study_config.hpp"

namespace nlde {

/// Invalid configuration, tagged with the offending key path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& reason)
      : std::runtime_error(key.empty() ? reason : key + ": " + reason), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Parses a JSON study description (comments allowed).
///
/// Keys: study, data, domain, M, tau | kappa, eps, lambda1, lambda2,
/// scheme, T, stride, tau_ref, M_ref, out. Unknown and duplicate keys are
/// errors; omitted optional keys get their defaults, which the result
/// carries explicitly (see config_to_json).
StudyConfig parse_config(std::string_view text);

/// The effective configuration as JSON; parse_config(config_to_json(c)) == c.
std::string config_to_json(const StudyConfig& config);

}  // namespace nlde
