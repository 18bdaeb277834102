#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qspectral/hmat.hpp"
#include "qspectral/sspec.hpp"

namespace qspectral {

using Rng = std::mt19937_64;

/// Quaternion with i.i.d. standard normal components.
Quaternion random_quaternion(Rng& rng);
/// Quaternion uniformly distributed on the unit 3-sphere.
Quaternion random_unit_quaternion(Rng& rng);
/// Matrix with i.i.d. standard normal components.
HMatrix random_matrix(std::size_t n, Rng& rng);
/// Quaternionic unitary from Gram-Schmidt on a random matrix.
HMatrix random_unitary(std::size_t n, Rng& rng);

struct GeneratorOptions {
  std::size_t n = 4;
  /// Dimension of the nilpotent part N.
  std::size_t nilpotent_dim = 1;
  /// Largest Jordan block in N.
  std::size_t max_block = 3;
  /// Minimal pairwise distance of the slice representatives of the
  /// invertible part's spectrum, including the distance to 0.
  double gap = 0.3;
  /// Condition number of the similarity S.
  double cond = 10.0;
  double min_modulus = 0.5;
  double max_modulus = 2.0;
  /// Chance that an eigenvalue of D is real.
  double real_probability = 0.2;
  /// Chance that an eigenvalue of D repeats a previous sphere.
  double repeat_probability = 0.1;
};

/// A = S (D + N) S^-1 with its ground truth.
struct GeneratedMatrix {
  HMatrix a;
  HMatrix s;
  HMatrix s_inv;
  unsigned index = 0;
  std::vector<std::size_t> blocks;  ///< Jordan block sizes of N
  std::vector<SphereEntry> spectrum;
  HMatrix drazin;                   ///< S (D^-1 + 0) S^-1
  HMatrix core_projection;          ///< S (I + 0) S^-1
};

GeneratedMatrix generate_matrix(const GeneratorOptions& options, Rng& rng);

/// Options with n fixed and a random nilpotent dimension in [0, n].
GeneratorOptions random_options(std::size_t n, Rng& rng);

/// The corpus used by the property harness: count matrices with sizes
/// cycling through sizes, generated from the given seed.
std::vector<GeneratedMatrix> generate_corpus(std::span<const std::size_t> sizes, std::size_t count,
                                             std::uint64_t seed, double gap = 0.3);

}  // namespace qspectral
