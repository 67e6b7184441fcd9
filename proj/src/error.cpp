#include "driftkin/error.hpp"

#include <sstream>

namespace driftkin {

namespace {

std::string join(const std::vector<std::string>& messages) {
  std::ostringstream os;
  os << messages.size() << " configuration error(s)";
  for (const auto& m : messages) os << "\n  " << m;
  return os.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> messages)
    : Error(join(messages)), messages_(std::move(messages)) {}

}  // namespace driftkin
