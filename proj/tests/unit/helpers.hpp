#pragma once

#include "purcell/medium.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace testing_support {

inline double rel(double a, double b) {
  const double d = std::abs(a - b);
  return d == 0.0 ? 0.0 : d / std::max(std::abs(a), std::abs(b));
}

inline double rel(purcell::complex a, purcell::complex b) {
  const double d = std::abs(a - b);
  return d == 0.0 ? 0.0 : d / std::max(std::abs(a), std::abs(b));
}

inline purcell::MediumSample paper(double w) {
  return purcell::sample(purcell::MediumModel::example_medium(), w);
}

// Random single-oscillator passive medium.
inline purcell::MediumModel random_medium(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> uL(0.01, 1.5), uT(0.1, 2.0), ug(0.005, 0.5);
  purcell::MediumModel m;
  m.electric.emplace_back(uL(rng), uT(rng), ug(rng));
  m.magnetic.emplace_back(uL(rng), uT(rng), ug(rng));
  return m;
}

} // namespace testing_support
