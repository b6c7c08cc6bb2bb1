#pragma once

#include <map>
#include <string>
#include <utility>

#include "ihlab/lattice.hpp"
#include "ihlab/verbitsky.hpp"

namespace fixtures {

/// Builder models are cached per (alias, n) for the lifetime of a test binary.
inline const ihlab::GradedAlgebraModel& sh(const std::string& alias, int n) {
  static std::map<std::pair<std::string, int>, ihlab::GradedAlgebraModel> cache;
  auto key = std::make_pair(alias, n);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto m = ihlab::build_sh(ihlab::load_lattice_fixture(alias, n).lattice, n);
    m.name = alias;
    it = cache.emplace(key, std::move(m)).first;
  }
  return it->second;
}

inline const ihlab::GradedAlgebraModel& toy5(int n = 1) { return sh("toy5", n); }
inline const ihlab::GradedAlgebraModel& k3() { return sh("k3", 1); }
inline const ihlab::GradedAlgebraModel& k3n2() { return sh("k3n", 2); }

inline ihlab::RationalVector vec(std::initializer_list<long> xs) {
  ihlab::RationalVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline ihlab::RationalVector unit_vector(std::size_t n, std::size_t i) {
  ihlab::RationalVector v(n, 0);
  v[i] = 1;
  return v;
}

}  // namespace fixtures
