#pragma once

#include "qspectral/generate.hpp"

namespace fixture {

/// The seed-42 verification fixture: 5 x 5, nilpotent part of index 2.
inline qspectral::GeneratedMatrix seed42() {
  qspectral::Rng rng(42);
  qspectral::GeneratorOptions o;
  o.n = 5;
  o.nilpotent_dim = 2;
  o.max_block = 2;
  // draw until the nilpotent part is a single 2 x 2 block
  for (;;) {
    qspectral::GeneratedMatrix g = qspectral::generate_matrix(o, rng);
    if (g.index == 2) return g;
  }
}

}  // namespace fixture
