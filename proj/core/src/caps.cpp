#include "archdyn/caps.hpp"

#include <cstdlib>
#include <string>

#include "archdyn/errors.hpp"

namespace archdyn {

namespace {

template <typename T>
void override_from_env(const char* name, T& field) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  try {
    const long long value = std::stoll(raw);
    if (value <= 0) throw ConfigError(std::string(name) + " must be positive");
    field = static_cast<T>(value);
  } catch (const std::logic_error&) {
    throw ConfigError(std::string(name) + " is not an integer: " + raw);
  }
}

}  // namespace

ResourceCaps ResourceCaps::from_env() {
  ResourceCaps caps;
  override_from_env("ARCHDYN_MAX_WORDS", caps.max_words);
  override_from_env("ARCHDYN_MAX_DIM", caps.max_matrix_dim);
  override_from_env("ARCHDYN_MAX_STABILIZATION", caps.max_stabilization_level);
  return caps;
}

}  // namespace archdyn
