#include "carlitz/caps.hpp"

#include <cstdlib>
#include <string>

namespace carlitz {
namespace {

std::int64_t env_override(const char* name, std::int64_t fallback) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return fallback;
  try {
    long long v = std::stoll(raw);
    if (v > 0) return v;
  } catch (...) {
  }
  return fallback;
}

}  // namespace

const Caps& Caps::current() {
  static const Caps caps = [] {
    Caps c;
    c.max_solve_dim = env_override("KUMMER_MAX_SOLVE_DIM", c.max_solve_dim);
    c.max_enum = env_override("KUMMER_MAX_ENUM", c.max_enum);
    c.max_cohom_rows = env_override("KUMMER_MAX_COHOM_ROWS", c.max_cohom_rows);
    return c;
  }();
  return caps;
}

}  // namespace carlitz
