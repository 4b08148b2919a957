#include "ttbar/verify/seeds.hpp"

#include <fstream>
#include <sstream>

#include "ttbar/error.hpp"

namespace ttbar::verify {

namespace {

bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

}  // namespace

spectra::Seed load_seed(const std::string& name) {
  const std::string prefix = "eta-modulus-";
  if (name.rfind(prefix, 0) == 0) {
    std::string m = name.substr(prefix.size());
    if (m.empty() || m.size() > 2 || m.find_first_not_of("0123456789") != std::string::npos)
      throw ConfigError("malformed seed name '" + name + "'");
    int power = std::stoi(m);
    if (power < 1) throw ConfigError("eta-modulus power must be >= 1");
    return spectra::eta_modulus_power_seed(power);
  }
  if (ends_with(name, ".json")) {
    std::ifstream in(name);
    if (!in) throw ConfigError("cannot open seed file '" + name + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return spectra::seed_from_json(buf.str());
  }
  try {
    return spectra::builtin_seed(name);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("unknown seed '") + name + "': " + e.what());
  }
}

spectra::HoloSeed load_holo_seed(const std::string& name) {
  spectra::Seed s = load_seed(name);
  if (auto* h = std::get_if<spectra::HoloSeed>(&s)) return *h;
  throw ConfigError("seed '" + name + "' is not holomorphic");
}

spectra::RealSeed load_real_seed(const std::string& name) {
  spectra::Seed s = load_seed(name);
  if (auto* r = std::get_if<spectra::RealSeed>(&s)) return *r;
  throw ConfigError("seed '" + name + "' is not real-analytic");
}

}  // namespace ttbar::verify
