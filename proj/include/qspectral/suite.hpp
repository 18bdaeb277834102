#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qspectral/generate.hpp"

namespace qspectral::suite {

/// Outcome of one property over a corpus. worst is the largest residual
/// seen (or the number of mismatches for counting properties).
struct PropertyResult {
  std::string name;
  int criterion = 0;
  double worst = 0.0;
  double tolerance = 0.0;
  std::size_t cases = 0;
  std::size_t skipped = 0;
  std::vector<std::string> errors;
  bool pass() const { return errors.empty() && worst <= tolerance; }
};

using Corpus = std::vector<GeneratedMatrix>;

// Each property takes the corpus, its tolerance and a seed for any extra
// randomness (polynomials, complements, scalars).
PropertyResult three_route_agreement(const Corpus& c, double tol);
PropertyResult definition_residuals(const Corpus& c, double tol);
PropertyResult index_coherence(const Corpus& c);
PropertyResult core_nilpotent_split(const Corpus& c, double tol);
PropertyResult unit_and_identity(const Corpus& c, double tol);
PropertyResult product_rule(const Corpus& c, double tol, std::uint64_t seed);
PropertyResult composition_rule(const Corpus& c, double tol);
PropertyResult spectral_mapping(const Corpus& c, double tol);
PropertyResult riesz_laws(const Corpus& c, double tol);
PropertyResult spectrum_containment(const Corpus& c, double tol);
PropertyResult gelfand_radius(const Corpus& c, double tol);
PropertyResult pseudo_resolvent(const Corpus& c, double tol, std::uint64_t seed);
PropertyResult generalized_inverse_laws(const Corpus& c, double tol, std::uint64_t seed);
PropertyResult group_existence(const Corpus& c);
PropertyResult group_uniqueness(const Corpus& c, double tol);
PropertyResult group_reciprocal_spectrum(const Corpus& c, double tol);
PropertyResult power_identities(const Corpus& c, double tol);
PropertyResult commuting_product(const Corpus& c, double tol, std::uint64_t seed);
PropertyResult left_multiplication(const Corpus& c, double tol);
PropertyResult self_adjoint_example(double tol);

struct Config {
  std::vector<std::size_t> sizes{2, 3, 4, 5, 6};
  std::vector<std::uint64_t> seeds{42};
  std::size_t count = 100;  ///< matrices per seed
  double gap = 0.3;
  /// Replaces every property tolerance when set.
  std::optional<double> tolerance;
  /// True for an empty config document: nothing runs.
  bool empty = false;
};

/// Accepts the keys sizes, seed, seeds, count, gap, tolerance. An empty
/// object yields an empty config.
Config parse_config(const nlohmann::json& doc);

Corpus build_corpus(const Config& config);

struct Report {
  std::vector<PropertyResult> properties;
  bool pass() const;
  nlohmann::json to_json() const;
};

/// Every property with its default tolerance (or the override).
Report run(const Config& config);

}  // namespace qspectral::suite
