#include "ttbar/simd/dispatch.hpp"

#include <atomic>
#include <cstdlib>

#include "ttbar/error.hpp"

namespace ttbar::simd {

namespace {

Backend detect() {
  if (const char* env = std::getenv("TTBAR_SIMD")) {
    Backend b = backend_from_string(env);
    if (backend_available(b)) return b;
  }
  return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

std::atomic<int>& slot() {
  static std::atomic<int> s{static_cast<int>(detect())};
  return s;
}

}  // namespace

const char* to_string(Backend b) { return b == Backend::avx2 ? "avx2" : "scalar"; }

Backend backend_from_string(const std::string& name) {
  if (name == "scalar") return Backend::scalar;
  if (name == "avx2") return Backend::avx2;
  throw ConfigError("unknown SIMD backend '" + name + "'");
}

bool backend_available(Backend b) {
  if (b == Backend::scalar) return true;
#if defined(TTBAR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend active_backend() { return static_cast<Backend>(slot().load(std::memory_order_relaxed)); }

void set_backend(Backend b) {
  if (!backend_available(b))
    throw ConfigError(std::string("SIMD backend not available: ") + to_string(b));
  slot().store(static_cast<int>(b), std::memory_order_relaxed);
}

}  // namespace ttbar::simd
