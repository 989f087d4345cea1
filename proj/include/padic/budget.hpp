#pragma once

#include <cstdlib>
#include <cstddef>

namespace padic {

// Resource caps, overridable via environment. A cap of 0 disables the guard.
namespace detail {
inline std::size_t env_budget(const char* name, std::size_t dflt) {
  const char* v = std::getenv(name);
  if (!v || !*v) return dflt;
  char* end = nullptr;
  unsigned long long n = std::strtoull(v, &end, 10);
  if (end == v || *end) return dflt;
  return static_cast<std::size_t>(n);
}
}  // namespace detail

inline std::size_t monomial_budget() {
  static std::size_t b = detail::env_budget("PADIC_MONOMIAL_BUDGET", 2000000);
  return b;
}
inline std::size_t state_budget() {
  static std::size_t b = detail::env_budget("PADIC_STATE_BUDGET", 5000000);
  return b;
}
inline std::size_t orbit_budget() {
  static std::size_t b = detail::env_budget("PADIC_ORBIT_BUDGET", 5000000);
  return b;
}

}  // namespace padic
