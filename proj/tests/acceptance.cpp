// One PASS/FAIL line per acceptance criterion over the default corpus
// (sizes 2..6, seed 42, 100 matrices, gap 0.3). Exit status is nonzero
// when any criterion fails.

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "qspectral/suite.hpp"

using namespace qspectral;
using suite::PropertyResult;

namespace {

// Tolerances of the acceptance criteria.
constexpr double kRouteAgreement = 1e-7;
constexpr double kDrazinResidual = 1e-8;
constexpr double kDecomposition = 1e-8;
constexpr double kUnitIdentity = 1e-9;
constexpr double kProductRule = 1e-8;
constexpr double kCompositionRule = 1e-8;
constexpr double kSpectralMapping = 1e-7;
constexpr double kRiesz = 1e-9;
constexpr double kContainment = 1e-8;
constexpr double kGelfand = 1e-4;
constexpr double kSeries = 1e-9;
constexpr double kGenInverse = 1e-8;
constexpr double kGroupUniqueness = 1e-9;
constexpr double kReciprocal = 1e-7;
constexpr double kIdentities = 1e-7;
constexpr double kMachine = 1e-14;

constexpr std::uint64_t kSeed = 42;

void report(int criterion, const std::string& title, const std::vector<PropertyResult>& parts, int& failures) {
  const bool ok = std::all_of(parts.begin(), parts.end(), [](const PropertyResult& p) { return p.pass(); });
  if (!ok) ++failures;
  std::printf("criterion %2d: %s  %s\n", criterion, ok ? "PASS" : "FAIL", title.c_str());
  for (const auto& p : parts) {
    std::printf("    %-34s worst %-12.4g tol %-8.1g cases %zu", p.name.c_str(), p.worst, p.tolerance, p.cases);
    if (p.skipped) std::printf(" skipped %zu", p.skipped);
    std::printf("%s\n", p.pass() ? "" : "  <-- fails");
    for (std::size_t i = 0; i < std::min<std::size_t>(p.errors.size(), 3); ++i)
      std::printf("      error: %s\n", p.errors[i].c_str());
  }
  std::fflush(stdout);
}

}  // namespace

int main() {
  suite::Config config;
  const suite::Corpus corpus = suite::build_corpus(config);
  std::printf("corpus: %zu matrices, sizes 2..6, seed %llu\n", corpus.size(), static_cast<unsigned long long>(kSeed));

  int failures = 0;
  report(1, "Drazin three-route agreement and defining residuals",
         {suite::three_route_agreement(corpus, kRouteAgreement), suite::definition_residuals(corpus, kDrazinResidual)},
         failures);
  report(2, "index = ascent = descent = nilpotency index; core-nilpotent split",
         {suite::index_coherence(corpus), suite::core_nilpotent_split(corpus, kDecomposition)}, failures);
  report(3, "functional calculus: unit, identity, product and composition rules",
         {suite::unit_and_identity(corpus, kUnitIdentity), suite::product_rule(corpus, kProductRule, kSeed),
          suite::composition_rule(corpus, kCompositionRule)},
         failures);
  report(4, "spectral mapping for z^2, 1/z, exp", {suite::spectral_mapping(corpus, kSpectralMapping)}, failures);
  report(5, "Riesz projections: idempotent, commuting, complementary", {suite::riesz_laws(corpus, kRiesz)}, failures);
  report(6, "spectrum inside the norm ball; Gelfand estimate at exponent 256",
         {suite::spectrum_containment(corpus, kContainment), suite::gelfand_radius(corpus, kGelfand)}, failures);
  report(7, "pseudo-resolvent series at |q| = 2 r_S(A)", {suite::pseudo_resolvent(corpus, kSeries, kSeed)}, failures);
  report(8, "generalized inverse laws", {suite::generalized_inverse_laws(corpus, kGenInverse, kSeed)}, failures);
  report(9, "group inverse: existence, uniqueness, reciprocal spectrum",
         {suite::group_existence(corpus), suite::group_uniqueness(corpus, kGroupUniqueness),
          suite::group_reciprocal_spectrum(corpus, kReciprocal)},
         failures);
  report(10, "power identities, commuting products, left multiplication",
         {suite::power_identities(corpus, kIdentities), suite::commuting_product(corpus, kIdentities, kSeed),
          suite::left_multiplication(corpus, kIdentities)},
         failures);
  report(11, "self-adjoint example: real spectrum {-1, 1}, left eigenvalue j", {suite::self_adjoint_example(kMachine)},
         failures);

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
