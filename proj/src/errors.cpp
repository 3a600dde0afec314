#include "tabgrid/errors.hpp"

namespace tabgrid {

namespace {

std::string summarize(const std::vector<std::string>& violations) {
  std::string msg = "invalid configuration";
  for (const auto& v : violations) msg += "\n  - " + v;
  return msg;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : Error(summarize(violations)), violations_(std::move(violations)) {}

}  // namespace tabgrid
