#pragma once

#include <string>

namespace ttbar::simd {

enum class Backend { scalar, avx2 };

const char* to_string(Backend b);
Backend backend_from_string(const std::string& name);

/// True when the backend was compiled in and the CPU supports it.
bool backend_available(Backend b);

/// Backend used by kernels called without an explicit backend. Chosen on
/// first use: TTBAR_SIMD=scalar|avx2 if set, else the widest available.
Backend active_backend();

/// Overrides the active backend; throws ConfigError if unavailable.
void set_backend(Backend b);

}  // namespace ttbar::simd
