// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gdapep {

// Deterministic uniform/normal stream: identical values on every platform
// for a given seed.  std::normal_distribution and friends are
// implementation-defined, which would break the byte-identical output
// contract of seeded commands.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in (0, 1].
  double uniform_pos() {
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1p-53;
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double theta = 2.0 * M_PI * uniform();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace gdapep
