#include "qspectral/suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qspectral/drazin.hpp"
#include "qspectral/geninv.hpp"
#include "qspectral/io.hpp"
#include "qspectral/scalc.hpp"

namespace qspectral::suite {

namespace {

constexpr std::size_t kMaxErrors = 5;

using CaseFn = std::function<std::optional<double>(const GeneratedMatrix&, std::size_t)>;

PropertyResult over_corpus(std::string name, int criterion, double tol, const Corpus& corpus, const CaseFn& fn) {
  PropertyResult r;
  r.name = std::move(name);
  r.criterion = criterion;
  r.tolerance = tol;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    try {
      const auto v = fn(corpus[i], i);
      if (!v) {
        ++r.skipped;
        continue;
      }
      ++r.cases;
      if (std::isnan(*v)) {
        r.worst = std::numeric_limits<double>::infinity();
      } else {
        r.worst = std::max(r.worst, *v);
      }
    } catch (const std::exception& e) {
      ++r.cases;
      if (r.errors.size() < kMaxErrors) r.errors.push_back("case " + std::to_string(i) + ": " + e.what());
    }
  }
  return r;
}

std::vector<EigenSphere> spheres_of(const Spectrum& s) {
  std::vector<EigenSphere> out;
  for (const auto& e : s.spheres) out.push_back(e.sphere);
  return out;
}

/// Distance from the point x (real) to the slice representatives of the spectrum.
double distance_to_spectrum(const Spectrum& s, cplx x) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& e : s.spheres) d = std::min(d, std::abs(slice_point(e.sphere) - x));
  return d;
}

std::vector<double> random_coeffs(Rng& rng, std::size_t degree) {
  std::normal_distribution<double> g;
  std::vector<double> c(degree + 1);
  for (auto& x : c) x = g(rng);
  return c;
}

std::vector<double> poly_product(const std::vector<double>& p, const std::vector<double>& q) {
  std::vector<double> out(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  return out;
}

HMatrix poly_of(const std::vector<double>& c, const HMatrix& a) {
  HMatrix acc(a.size());
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * a + *it * HMatrix::identity(a.size());
  return acc;
}

/// Random vectors completing nothing in particular; used as a generic
/// complement of a given subspace.
std::vector<QVector> random_vectors(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<QVector> out(k, QVector(n));
  for (auto& v : out)
    for (auto& q : v) q = random_quaternion(rng);
  return out;
}

}  // namespace

PropertyResult three_route_agreement(const Corpus& c, double tol) {
  return over_corpus("drazin.three_route_agreement", 1, tol, c, [](const GeneratedMatrix& g, std::size_t) {
    const HMatrix x = drazin_algebraic(g.a).inverse;
    const HMatrix y = drazin_via_projection(g.a).inverse;
    const HMatrix z = drazin_via_funcalc(g.a).inverse;
    return std::optional<double>(
        std::max({relative_deviation(x, y), relative_deviation(x, z), relative_deviation(y, z)}));
  });
}

PropertyResult definition_residuals(const Corpus& c, double tol) {
  return over_corpus("drazin.definition_residuals", 1, tol, c, [](const GeneratedMatrix& g, std::size_t) {
    double worst = 0.0;
    for (const auto& r : {drazin_algebraic(g.a), drazin_via_projection(g.a), drazin_via_funcalc(g.a)})
      worst = std::max(worst, verify_drazin(g.a, r.inverse, r.index).max());
    return std::optional<double>(worst);
  });
}

PropertyResult index_coherence(const Corpus& c) {
  return over_corpus("drazin.index_coherence", 2, 0.0, c, [](const GeneratedMatrix& g, std::size_t) {
    const DrazinResult d = drazin_algebraic(g.a);
    const unsigned k = index(g.a);
    const bool ok = k == g.index && ascent(g.a) == k && descent(g.a) == k &&
                    nilpotent_part_index(g.a, d.inverse) == k;
    return std::optional<double>(ok ? 0.0 : 1.0);
  });
}

PropertyResult core_nilpotent_split(const Corpus& c, double tol) {
  return over_corpus("drazin.core_nilpotent_split", 2, tol, c, [tol](const GeneratedMatrix& g, std::size_t) {
    const DecompositionReport r = decomposition_check(g.a, index(g.a));
    if (r.range_dim + r.kernel_dim != g.a.size() || !(r.min_singular > tol))
      return std::optional<double>(std::numeric_limits<double>::infinity());
    return std::optional<double>(std::max(r.kernel_residual, r.invariance));
  });
}

PropertyResult unit_and_identity(const Corpus& c, double tol) {
  return over_corpus("funcalc.unit_and_identity", 3, tol, c, [](const GeneratedMatrix& g, std::size_t) {
    const double one = relative_deviation(HMatrix::identity(g.a.size()), func_calc(fn::constant(1.0), g.a));
    const double id = relative_deviation(g.a, func_calc(fn::identity(), g.a));
    return std::optional<double>(std::max(one, id));
  });
}

PropertyResult product_rule(const Corpus& c, double tol, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<std::vector<double>, std::vector<double>>> polys;
  for (std::size_t i = 0; i < c.size(); ++i) polys.emplace_back(random_coeffs(rng, 1 + i % 3), random_coeffs(rng, 1 + (i + 1) % 3));
  return over_corpus("funcalc.product_rule", 3, tol, c, [&](const GeneratedMatrix& g, std::size_t i) {
    const auto& [p, q] = polys[i];
    const HMatrix fg = func_calc(fn::poly(poly_product(p, q)), g.a);
    const HMatrix f_g = func_calc(fn::poly(p), g.a) * func_calc(fn::poly(q), g.a);
    return std::optional<double>(relative_deviation(fg, f_g));
  });
}

PropertyResult composition_rule(const Corpus& c, double tol) {
  return over_corpus("funcalc.composition_rule", 3, tol, c, [](const GeneratedMatrix& g, std::size_t) {
    // 1/(z+1) needs -1 away from the spectrum.
    if (distance_to_spectrum(s_spectrum(g.a), cplx(-1.0, 0.0)) < 0.1) return std::optional<double>();
    return std::optional<double>(composition_check(fn::poly({1.0, 1.0}), fn::recip(), g.a).deviation);
  });
}

PropertyResult spectral_mapping(const Corpus& c, double tol) {
  return over_corpus("funcalc.spectral_mapping", 4, tol, c, [](const GeneratedMatrix& g, std::size_t) {
    std::vector<IntrinsicFn> fns{fn::poly({0.0, 0.0, 1.0}), fn::exp()};
    if (g.blocks.empty()) fns.push_back(fn::recip());
    double worst = 0.0;
    for (const auto& f : fns) {
      const SpectralMappingReport r = spectral_mapping_check(f, g.a);
      if (r.match.expected_count != r.match.computed_count) return std::optional<double>(std::numeric_limits<double>::infinity());
      worst = std::max(worst, r.match.max_deviation);
    }
    return std::optional<double>(worst);
  });
}

PropertyResult riesz_laws(const Corpus& c, double tol) {
  return over_corpus("riesz.projection_laws", 5, tol, c, [](const GeneratedMatrix& g, std::size_t) {
    const Spectrum s = s_spectrum(g.a);
    const auto all = spheres_of(s);
    const std::size_t n = g.a.size();
    const double na = operator_norm(g.a);
    double worst = 0.0;
    for (std::size_t i = 0; i < all.size(); ++i) {
      std::vector<EigenSphere> part{all[i]};
      std::vector<EigenSphere> rest;
      for (std::size_t j = 0; j < all.size(); ++j)
        if (j != i) rest.push_back(all[j]);
      const HMatrix p = riesz_projection(g.a, part);
      const HMatrix q = riesz_projection(g.a, rest);
      const double np = operator_norm(p);
      worst = std::max({worst, scaled_residual(operator_norm(p * p - p), np * np + np),
                        scaled_residual(operator_norm(p * g.a - g.a * p), 2.0 * np * na),
                        relative_deviation(HMatrix::identity(n), p + q)});
    }
    return std::optional<double>(worst);
  });
}

PropertyResult spectrum_containment(const Corpus& c, double tol) {
  return over_corpus("spectrum.containment", 6, tol, c, [](const GeneratedMatrix& g, std::size_t) {
    const Spectrum s = s_spectrum(g.a);
    if (s.total_multiplicity() != static_cast<int>(g.a.size()) || s.spheres.empty())
      return std::optional<double>(std::numeric_limits<double>::infinity());
    return std::optional<double>(std::max(0.0, s.max_radius() - operator_norm(g.a)));
  });
}

PropertyResult gelfand_radius(const Corpus& c, double tol) {
  return over_corpus("spectrum.gelfand_radius", 6, tol, c, [](const GeneratedMatrix& g, std::size_t) {
    return std::optional<double>(std::abs(spectral_radius_gelfand(g.a, 256).value() - s_spectrum(g.a).max_radius()));
  });
}

PropertyResult pseudo_resolvent(const Corpus& c, double tol, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Quaternion> dirs;
  for (std::size_t i = 0; i < c.size(); ++i) dirs.push_back(random_unit_quaternion(rng));
  return over_corpus("spectrum.pseudo_resolvent_series", 7, tol, c, [&](const GeneratedMatrix& g, std::size_t i) {
    const double r = s_spectrum(g.a).max_radius();
    if (r == 0.0) return std::optional<double>();
    const Quaternion q = (2.0 * r) * dirs[i];
    const HMatrix direct = inverse(q_pencil(g.a, q));
    return std::optional<double>(relative_deviation(direct, pseudo_resolvent_series(q, g.a).value));
  });
}

PropertyResult generalized_inverse_laws(const Corpus& c, double tol, std::uint64_t seed) {
  Rng rng(seed);
  return over_corpus("geninv.laws", 8, tol, c, [&](const GeneratedMatrix& g, std::size_t) {
    const std::size_t n = g.a.size();
    const HMatrix b = moore_penrose(g.a);
    double worst = check_generalized_inverse(g.a, b).max_residual();
    if (!check_generalized_inverse(g.a, b).ranks_agree) worst = std::numeric_limits<double>::infinity();

    // Q onto R(A) along a random complement, P along N(A) onto a random complement.
    const RangeKernel rk = range_kernel_basis(g.a, 1);
    const HMatrix q = oblique_projector(n, rk.range, random_vectors(n, n - rk.range.size(), rng));
    const HMatrix p = oblique_projector(n, random_vectors(n, n - rk.kernel.size(), rng), rk.kernel);
    const HMatrix t = gen_inverse_from(b, p, q, g.a);
    const GenInvReport rt = check_generalized_inverse(g.a, t);
    worst = std::max(worst, rt.ranks_agree ? rt.max_residual() : std::numeric_limits<double>::infinity());
    return std::optional<double>(worst);
  });
}

PropertyResult group_existence(const Corpus& c) {
  return over_corpus("group.existence", 9, 0.0, c, [](const GeneratedMatrix& g, std::size_t) {
    const bool expected = rank(g.a) == power_rank(g.a, 2);
    bool exists = true;
    try {
      (void)group_inverse(g.a);
    } catch (const MathError&) {
      exists = false;
    }
    return std::optional<double>(exists == expected && expected == (g.index <= 1) ? 0.0 : 1.0);
  });
}

PropertyResult group_uniqueness(const Corpus& c, double tol) {
  return over_corpus("group.uniqueness", 9, tol, c, [](const GeneratedMatrix& g, std::size_t) {
    if (g.index > 1) return std::optional<double>();
    const HMatrix b = group_inverse(g.a);
    const HMatrix split = group_inverse_by_splitting(g.a);
    return std::optional<double>(
        std::max(relative_deviation(drazin_algebraic(g.a).inverse, b), relative_deviation(split, b)));
  });
}

PropertyResult group_reciprocal_spectrum(const Corpus& c, double tol) {
  return over_corpus("group.reciprocal_spectrum", 9, tol, c, [](const GeneratedMatrix& g, std::size_t) {
    if (g.index > 1) return std::optional<double>();
    const ReciprocalSpectrumReport r = group_inverse_spectrum_check(g.a);
    if (r.match.expected_count != r.match.computed_count) return std::optional<double>(std::numeric_limits<double>::infinity());
    return std::optional<double>(r.match.max_deviation);
  });
}

PropertyResult power_identities(const Corpus& c, double tol) {
  return over_corpus("drazin.power_identities", 10, tol, c, [](const GeneratedMatrix& g, std::size_t) {
    return std::optional<double>(identity_suite(g.a, 3).max());
  });
}

PropertyResult commuting_product(const Corpus& c, double tol, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<double>> polys;
  for (std::size_t i = 0; i < c.size(); ++i) polys.push_back(random_coeffs(rng, 2));
  return over_corpus("drazin.commuting_product", 10, tol, c, [&](const GeneratedMatrix& g, std::size_t i) {
    // Keep p(A) well away from singular on the invertible part.
    std::vector<double> p = polys[i];
    const Spectrum s = s_spectrum(g.a);
    const auto min_value = [&](const std::vector<double>& coeffs) {
      double m = std::numeric_limits<double>::infinity();
      const IntrinsicFn f = fn::poly(coeffs);
      for (const auto& e : s.spheres) m = std::min(m, std::abs(f(slice_point(e.sphere))));
      return m;
    };
    for (int shift = 0; shift < 20 && min_value(p) < 0.2; ++shift) p[0] += 0.5;
    const HMatrix b = poly_of(p, g.a);
    return std::optional<double>(commuting_product_check(g.a, b).deviation);
  });
}

PropertyResult left_multiplication(const Corpus& c, double tol) {
  return over_corpus("drazin.left_multiplication", 10, tol, c, [](const GeneratedMatrix& g, std::size_t) {
    if (g.a.size() > 4) return std::optional<double>();
    const LeftMultReport r = left_mult_check(g.a);
    if (r.index_a != r.index_l) return std::optional<double>(std::numeric_limits<double>::infinity());
    return std::optional<double>(r.deviation);
  });
}

PropertyResult self_adjoint_example(double tol) {
  PropertyResult r;
  r.name = "spectrum.self_adjoint_example";
  r.criterion = 11;
  r.tolerance = tol;
  r.cases = 1;
  try {
    const HMatrix t{{Quaternion{}, kUnitI}, {-kUnitI, Quaternion{}}};
    const Spectrum s = s_spectrum(t);
    // Expected: the two real points -1 and 1.
    const std::vector<SphereEntry> expected{{{-1.0, 0.0}, 1}, {{1.0, 0.0}, 1}};
    const SpectrumMatchReport m = match_spheres(expected, s.spheres);
    double worst = m.expected_count == m.computed_count ? m.max_deviation : std::numeric_limits<double>::infinity();

    // Left eigenvalue witness: T u = j u for u = (1, -k).
    const QVector u{Quaternion{1.0}, -kUnitK};
    const QVector tu = qspectral::apply(t, u);
    double res = 0.0;
    for (std::size_t i = 0; i < 2; ++i) res = std::max(res, norm(tu[i] - kUnitJ * u[i]));
    worst = std::max(worst, res);

    // j is not in the S-spectrum: the pencil at j is invertible.
    if (s.contains({0.0, 1.0}) || smallest_singular_value(q_pencil(t, kUnitJ)) < 0.5)
      worst = std::numeric_limits<double>::infinity();
    r.worst = worst;
  } catch (const std::exception& e) {
    r.errors.push_back(e.what());
  }
  return r;
}

Config parse_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw FormatError("suite config: expected an object");
  Config c;
  if (doc.empty()) {
    c.empty = true;
    return c;
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "sizes") {
      if (!value.is_array()) throw FormatError("suite config: sizes: expected an array");
      c.sizes.clear();
      for (const auto& v : value) {
        if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 8)
          throw FormatError("suite config: sizes: expected integers in [1, 8]");
        c.sizes.push_back(v.get<std::size_t>());
      }
    } else if (key == "seed") {
      if (!value.is_number_integer()) throw FormatError("suite config: seed: expected an integer");
      c.seeds = {value.get<std::uint64_t>()};
    } else if (key == "seeds") {
      if (!value.is_array()) throw FormatError("suite config: seeds: expected an array");
      c.seeds.clear();
      for (const auto& v : value) {
        if (!v.is_number_integer()) throw FormatError("suite config: seeds: expected integers");
        c.seeds.push_back(v.get<std::uint64_t>());
      }
    } else if (key == "count") {
      if (!value.is_number_integer() || value.get<long long>() < 0) throw FormatError("suite config: count: expected a nonnegative integer");
      c.count = value.get<std::size_t>();
    } else if (key == "gap") {
      if (!value.is_number() || !(value.get<double>() > 0.0) || value.get<double>() > 0.5)
        throw FormatError("suite config: gap: expected a number in (0, 0.5]");
      c.gap = value.get<double>();
    } else if (key == "tolerance") {
      if (!value.is_number() || !(value.get<double>() >= 0.0)) throw FormatError("suite config: tolerance: expected a nonnegative number");
      c.tolerance = value.get<double>();
    } else {
      throw FormatError("suite config: " + key + ": unexpected field");
    }
  }
  return c;
}

Corpus build_corpus(const Config& config) {
  Corpus out;
  for (std::uint64_t seed : config.seeds) {
    Corpus part = generate_corpus(config.sizes, config.count, seed, config.gap);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

bool Report::pass() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.pass(); });
}

nlohmann::json Report::to_json() const {
  nlohmann::json props = nlohmann::json::array();
  for (const auto& p : properties) {
    nlohmann::json j;
    j["name"] = p.name;
    j["criterion"] = p.criterion;
    j["worst"] = std::isfinite(p.worst) ? nlohmann::json(p.worst) : nlohmann::json(nullptr);
    j["tolerance"] = p.tolerance;
    j["cases"] = p.cases;
    j["skipped"] = p.skipped;
    j["pass"] = p.pass();
    if (!p.errors.empty()) j["errors"] = p.errors;
    props.push_back(std::move(j));
  }
  return {{"format", "qsuite-1"}, {"pass", pass()}, {"properties", std::move(props)}};
}

Report run(const Config& config) {
  Report report;
  if (config.empty) return report;
  const Corpus corpus = build_corpus(config);
  const std::uint64_t seed = config.seeds.empty() ? 0 : config.seeds.front();
  const auto tol = [&](double t) { return config.tolerance.value_or(t); };
  auto& p = report.properties;
  p.push_back(three_route_agreement(corpus, tol(1e-7)));
  p.push_back(definition_residuals(corpus, tol(1e-8)));
  p.push_back(index_coherence(corpus));
  p.push_back(core_nilpotent_split(corpus, tol(1e-8)));
  p.push_back(unit_and_identity(corpus, tol(1e-9)));
  p.push_back(product_rule(corpus, tol(1e-8), seed + 1));
  p.push_back(composition_rule(corpus, tol(1e-8)));
  p.push_back(spectral_mapping(corpus, tol(1e-7)));
  p.push_back(riesz_laws(corpus, tol(1e-9)));
  p.push_back(spectrum_containment(corpus, tol(1e-8)));
  p.push_back(gelfand_radius(corpus, tol(1e-4)));
  p.push_back(pseudo_resolvent(corpus, tol(1e-9), seed + 2));
  p.push_back(generalized_inverse_laws(corpus, tol(1e-8), seed + 3));
  p.push_back(group_existence(corpus));
  p.push_back(group_uniqueness(corpus, tol(1e-9)));
  p.push_back(group_reciprocal_spectrum(corpus, tol(1e-7)));
  p.push_back(power_identities(corpus, tol(1e-7)));
  p.push_back(commuting_product(corpus, tol(1e-7), seed + 4));
  p.push_back(left_multiplication(corpus, tol(1e-7)));
  p.push_back(self_adjoint_example(tol(1e-14)));
  return report;
}

}  // namespace qspectral::suite
