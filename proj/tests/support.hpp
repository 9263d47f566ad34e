// Shared helpers for the test suites.
#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "polaris/polaris.hpp"

namespace support {

// POLARIS_TEST_SEED overrides the fixed default
inline std::uint64_t seed() {
  if (const char* s = std::getenv("POLARIS_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return 20261018;
}

inline std::mt19937_64 rng(std::uint64_t salt) { return std::mt19937_64(seed() ^ (salt * 0x9E3779B97F4A7C15ull)); }

inline std::string data(const std::string& name) { return std::string(POLARIS_DATA_DIR) + "/" + name; }
inline std::string test_data(const std::string& name) { return std::string(POLARIS_TEST_DATA_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) { return polaris::dump(polaris::read_json_file(path)); }

// Weighted average of the vertices, pushed back onto the model.
inline polaris::Vec3 interior(const polaris::Realization& R, const std::vector<double>& w) {
  polaris::Vec3 x = polaris::Vec3::Zero();
  double s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) x += w[i] * R.vertices[i], s += w[i];
  return polaris::normalize_point(R.model, x / s);
}

template <class Rng>
polaris::Vec3 random_interior(const polaris::Realization& R, Rng& g) {
  std::uniform_real_distribution<double> u(0.15, 1.0);
  std::vector<double> w(R.vertices.size());
  for (auto& x : w) x = u(g);
  return interior(R, w);
}

}  // namespace support
