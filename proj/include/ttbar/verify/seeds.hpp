#pragma once

#include <string>

#include "ttbar/spectra/seed.hpp"

namespace ttbar::verify {

/// Resolves a seed name: a built-in name (theta3, eta-inverse, eta24,
/// ising-Z), "eta-modulus-<m>" for |eta|^{2m}, or a path ending in .json
/// holding a seed description. Throws ConfigError for anything else.
spectra::Seed load_seed(const std::string& name);
spectra::HoloSeed load_holo_seed(const std::string& name);
spectra::RealSeed load_real_seed(const std::string& name);

}  // namespace ttbar::verify
