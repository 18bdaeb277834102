#include "qspectral/sspec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "linalg.hpp"

namespace qspectral {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Relative backward error assumed for matrices assembled from similarity
// transforms with condition number up to ~50.
constexpr double kClusterNoise = 2500.0 * kEps;

bool sphere_less(const SphereEntry& x, const SphereEntry& y) {
  if (x.sphere.u != y.sphere.u) return x.sphere.u < y.sphere.u;
  return x.sphere.v < y.sphere.v;
}

}  // namespace

int Spectrum::total_multiplicity() const {
  int total = 0;
  for (const auto& s : spheres) total += s.mult;
  return total;
}

double Spectrum::max_radius() const {
  double r = 0.0;
  for (const auto& s : spheres) r = std::max(r, std::hypot(s.sphere.u, s.sphere.v));
  return r;
}

int Spectrum::find(const EigenSphere& s, double tol) const {
  if (tol < 0.0) tol = tol_sphere;
  for (std::size_t i = 0; i < spheres.size(); ++i)
    if (same_sphere(spheres[i].sphere, s, tol)) return static_cast<int>(i);
  return -1;
}

double default_sphere_tolerance(const HMatrix& a) { return 1e-8 * (1.0 + operator_norm(a)); }

std::vector<EigenCluster> cluster_eigenvalues(std::span<const cplx> eigs, double norm, double tol_sphere,
                                              double safety) {
  const auto threshold = [&](std::size_t m, bool conjugate_closed) {
    // A real point of multiplicity k shows up as two k-blocks, so its
    // splitting scales like noise^(2/m) rather than noise^(1/m).
    const double p = conjugate_closed ? 2.0 : 1.0;
    const double defect = safety * norm * std::pow(kClusterNoise, std::min(1.0, p / static_cast<double>(m)));
    return std::max(tol_sphere, defect);
  };

  // A k x k Jordan block perturbed by noise splits into k points on a ring
  // of radius about scale * noise^(1/k). A member at distance d therefore
  // needs a block of size k(d) and that block puts k(d) members at a
  // comparable distance. Clusters failing this are unions of unrelated
  // eigenvalues.
  const double scale = safety * norm;
  const auto rings_consistent = [&](const std::vector<int>& order, std::size_t m, cplx centroid) {
    if (scale <= 0.0) return true;
    std::vector<double> dist(m);
    for (std::size_t i = 0; i < m; ++i) dist[i] = std::abs(eigs[static_cast<std::size_t>(order[i])] - centroid);
    const double floor = std::max(tol_sphere, scale * kClusterNoise);
    for (double d : dist) {
      if (d <= floor) continue;
      if (d >= scale) return false;
      const double need = std::ceil(std::log(kClusterNoise) / std::log(d / scale) - 1e-9);
      const auto near = std::count_if(dist.begin(), dist.end(), [&](double x) { return x >= 0.25 * d; });
      if (static_cast<double>(near) < need) return false;
    }
    return true;
  };

  std::vector<int> remaining(eigs.size());
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<EigenCluster> clusters;

  while (!remaining.empty()) {
    EigenCluster best;
    bool found = false;
    for (std::size_t m = remaining.size(); m >= 1 && !found; --m) {
      for (int p : remaining) {
        std::vector<int> order = remaining;
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
          return std::abs(eigs[static_cast<std::size_t>(x)] - eigs[static_cast<std::size_t>(p)]) <
                 std::abs(eigs[static_cast<std::size_t>(y)] - eigs[static_cast<std::size_t>(p)]);
        });
        cplx centroid = 0.0;
        for (std::size_t i = 0; i < m; ++i) centroid += eigs[static_cast<std::size_t>(order[i])];
        centroid /= static_cast<double>(m);
        double radius = 0.0;
        for (std::size_t i = 0; i < m; ++i)
          radius = std::max(radius, std::abs(eigs[static_cast<std::size_t>(order[i])] - centroid));
        const bool closed = std::abs(centroid.imag()) <= std::max(tol_sphere, radius);
        if (radius > threshold(m, closed)) continue;
        if (!rings_consistent(order, m, centroid)) continue;
        double outside = std::numeric_limits<double>::infinity();
        for (std::size_t i = m; i < order.size(); ++i)
          outside = std::min(outside, std::abs(eigs[static_cast<std::size_t>(order[i])] - centroid));
        if (outside <= radius) continue;
        if (!found || radius < best.radius) {
          best.centroid = centroid;
          best.radius = radius;
          best.members.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
          found = true;
        }
      }
      if (m == 1) break;
    }
    std::sort(best.members.begin(), best.members.end());
    std::erase_if(remaining, [&](int x) {
      return std::binary_search(best.members.begin(), best.members.end(), x);
    });
    clusters.push_back(std::move(best));
  }
  return clusters;
}

std::vector<cplx> adjoint_eigenvalues(const HMatrix& a) {
  return detail::eigenvalues(complex_adjoint(a).matrix());
}

HMatrix q_pencil(const HMatrix& a, const Quaternion& q) {
  HMatrix out = a * a;
  out -= (2.0 * re(q)) * a;
  const double q2 = norm2(q);
  for (std::size_t i = 0; i < a.size(); ++i) out(i, i) += q2;
  return out;
}

void add_sphere(std::vector<SphereEntry>& list, const EigenSphere& s, int mult, double tol) {
  for (auto& e : list) {
    if (same_sphere(e.sphere, s, tol)) {
      e.mult += mult;
      return;
    }
  }
  list.push_back({s, mult});
}

Spectrum spectrum_from_clusters(std::span<const EigenCluster> clusters, double tol_sphere) {
  Spectrum out;
  out.tol_sphere = tol_sphere;
  for (const auto& c : clusters) {
    const int m = static_cast<int>(c.members.size());
    double u = c.centroid.real();
    double v = c.centroid.imag();
    const bool real = std::abs(v) <= std::max(tol_sphere, c.radius);
    if (!real && v < 0.0) continue;
    if (std::abs(u) <= tol_sphere) u = 0.0;
    if (real) {
      add_sphere(out.spheres, {u, 0.0}, (m + 1) / 2, tol_sphere);
    } else {
      add_sphere(out.spheres, {u, v}, m, tol_sphere);
    }
  }
  std::sort(out.spheres.begin(), out.spheres.end(), sphere_less);
  return out;
}

Spectrum s_spectrum(const HMatrix& a, const SpectrumOptions& options) {
  const double norm = operator_norm(a);
  const double tol = options.tol_sphere.value_or(1e-8 * (1.0 + norm));
  const auto eigs = adjoint_eigenvalues(a);
  const auto clusters = cluster_eigenvalues(eigs, norm, tol, options.cluster_safety);
  return spectrum_from_clusters(clusters, tol);
}

HMatrix s_resolvent_left(const Quaternion& s, const HMatrix& a) {
  const HMatrix q = q_pencil(a, s);
  if (rank(q) < static_cast<int>(a.size())) throw MathError("S-resolvent undefined on the S-spectrum");
  HMatrix shifted = a;
  const Quaternion sbar = conj(s);
  for (std::size_t i = 0; i < a.size(); ++i) shifted(i, i) -= sbar;
  return -(inverse(q) * shifted);
}

GelfandSequence spectral_radius_gelfand(const HMatrix& a, unsigned n_max) {
  if (n_max < 1) throw std::invalid_argument("spectral_radius_gelfand: n_max must be >= 1");
  GelfandSequence seq;
  double nb = operator_norm(a);
  seq.exponents.push_back(1);
  seq.estimates.push_back(nb);
  bool vanished = nb == 0.0;
  HMatrix b = vanished ? a : (1.0 / nb) * a;
  double log_scale = vanished ? 0.0 : std::log(nb);
  for (unsigned k = 2; k <= n_max; k *= 2) {
    seq.exponents.push_back(k);
    if (vanished) {
      seq.estimates.push_back(0.0);
      continue;
    }
    b = b * b;
    log_scale *= 2.0;
    nb = operator_norm(b);
    if (nb == 0.0) {
      vanished = true;
      seq.estimates.push_back(0.0);
      continue;
    }
    b *= 1.0 / nb;
    log_scale += std::log(nb);
    seq.estimates.push_back(std::exp(log_scale / static_cast<double>(k)));
    if (k > n_max / 2) break;
  }
  return seq;
}

SeriesResult pseudo_resolvent_series(const Quaternion& q, const HMatrix& a, double tol, unsigned max_terms) {
  const double radius = s_spectrum(a).max_radius();
  const double qn = norm(q);
  if (!(qn > radius)) throw MathError("outside convergence region (|q| <= r_S(A))");

  const std::size_t n = a.size();
  const Quaternion qbar_inv = inv(conj(q));
  const Quaternion q_inv = inv(q);
  // powers[k] = qbar_inv^k, qpowers[k] = q_inv^k
  std::vector<Quaternion> qbar_pow{Quaternion{1.0}};
  std::vector<Quaternion> q_pow{Quaternion{1.0}};

  SeriesResult out{HMatrix(n), 0};
  HMatrix an = HMatrix::identity(n);
  unsigned quiet = 0;
  for (unsigned term = 0; term < max_terms; ++term) {
    qbar_pow.push_back(qbar_pow.back() * qbar_inv);
    q_pow.push_back(q_pow.back() * q_inv);
    Quaternion coeff;
    for (unsigned k = 0; k <= term; ++k) coeff += qbar_pow[k + 1] * q_pow[term - k + 1];

    out.value += scale_right(an, coeff);
    out.terms = term + 1;

    const double an_norm = frobenius_norm(an);
    const double bound = an_norm * (term + 1.0) * std::pow(qn, -static_cast<double>(term) - 2.0);
    if (an_norm == 0.0) return out;
    quiet = bound <= tol * frobenius_norm(out.value) ? quiet + 1 : 0;
    if (quiet >= 3) return out;
    an = an * a;
  }
  throw MathError("pseudo-resolvent series did not converge within the term limit");
}

bool is_quasinilpotent(const HMatrix& a) {
  const Spectrum s = s_spectrum(a);
  return s.spheres.size() == 1 && s.spheres.front().sphere == EigenSphere{0.0, 0.0};
}

SpectrumMatchReport match_spheres(std::span<const SphereEntry> expected, std::span<const SphereEntry> computed) {
  std::vector<EigenSphere> exp_list;
  std::vector<EigenSphere> got_list;
  for (const auto& e : expected)
    for (int i = 0; i < e.mult; ++i) exp_list.push_back(e.sphere);
  for (const auto& e : computed)
    for (int i = 0; i < e.mult; ++i) got_list.push_back(e.sphere);

  SpectrumMatchReport report;
  report.expected_count = static_cast<int>(exp_list.size());
  report.computed_count = static_cast<int>(got_list.size());
  std::vector<bool> used(got_list.size(), false);
  for (const auto& e : exp_list) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < got_list.size(); ++j) {
      if (used[j]) continue;
      const double d = sphere_distance(e, got_list[j]);
      if (d < best_d) { best_d = d; best = static_cast<int>(j); }
    }
    if (best < 0) continue;
    used[static_cast<std::size_t>(best)] = true;
    report.pairs.push_back({e, got_list[static_cast<std::size_t>(best)], best_d});
    report.max_deviation = std::max(report.max_deviation, best_d);
  }
  return report;
}

}  // namespace qspectral
