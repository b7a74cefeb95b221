#pragma once

#include <cstddef>

namespace archdyn {

// Limits that keep desk-scale runs bounded. Every enumeration or matrix
// construction checks against these before allocating.
struct ResourceCaps {
  std::size_t max_words = 4'000'000;
  std::size_t max_matrix_dim = 20'000;
  int max_stabilization_level = 8;

  // Defaults overridden by ARCHDYN_MAX_WORDS, ARCHDYN_MAX_DIM and
  // ARCHDYN_MAX_STABILIZATION when set.
  static ResourceCaps from_env();
};

}  // namespace archdyn
