#include "qspectral/generate.hpp"

#include <algorithm>
#include <cmath>

namespace qspectral {

namespace {

double vector_norm(const QVector& v) {
  double s = 0.0;
  for (const auto& q : v) s += norm2(q);
  return std::sqrt(s);
}

Quaternion random_with_modulus(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> mod(lo, hi);
  return mod(rng) * random_unit_quaternion(rng);
}

bool admissible(const EigenSphere& s, std::span<const SphereEntry> taken, double gap) {
  if (s.v > 0.0 && 2.0 * s.v < gap) return false;
  if (std::hypot(s.u, s.v) < gap) return false;
  return std::all_of(taken.begin(), taken.end(),
                     [&](const SphereEntry& e) { return sphere_distance(e.sphere, s) >= gap; });
}

}  // namespace

Quaternion random_quaternion(Rng& rng) {
  std::normal_distribution<double> g;
  return {g(rng), g(rng), g(rng), g(rng)};
}

Quaternion random_unit_quaternion(Rng& rng) {
  Quaternion q;
  do q = random_quaternion(rng);
  while (norm(q) < 1e-3);
  return q / norm(q);
}

HMatrix random_matrix(std::size_t n, Rng& rng) {
  HMatrix a(n);
  for (auto& q : a.entries()) q = random_quaternion(rng);
  return a;
}

HMatrix random_unitary(std::size_t n, Rng& rng) {
  std::vector<QVector> cols;
  while (cols.size() < n) {
    QVector v(n);
    for (auto& q : v) q = random_quaternion(rng);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : cols) {
        Quaternion c;
        for (std::size_t k = 0; k < n; ++k) c += conj(u[k]) * v[k];
        for (std::size_t k = 0; k < n; ++k) v[k] -= u[k] * c;
      }
    }
    const double nv = vector_norm(v);
    if (nv < 1e-6) continue;
    for (auto& q : v) q = q / nv;
    cols.push_back(std::move(v));
  }
  return HMatrix::from_columns(cols);
}

GeneratedMatrix generate_matrix(const GeneratorOptions& o, Rng& rng) {
  if (o.nilpotent_dim > o.n) throw std::invalid_argument("generate_matrix: nilpotent_dim exceeds n");
  if (o.max_block < 1 || o.cond < 1.0 || o.min_modulus < o.gap || o.max_modulus < o.min_modulus)
    throw std::invalid_argument("generate_matrix: inconsistent options");

  const std::size_t n = o.n;
  const std::size_t m = n - o.nilpotent_dim;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  GeneratedMatrix g;

  // Invertible diagonal part.
  std::vector<Quaternion> d;
  std::vector<SphereEntry> distinct;
  for (std::size_t i = 0; i < m; ++i) {
    if (!distinct.empty() && unit(rng) < o.repeat_probability) {
      const auto& e = distinct[static_cast<std::size_t>(unit(rng) * static_cast<double>(distinct.size())) % distinct.size()];
      Quaternion dir = random_unit_quaternion(rng);
      dir.a = 0.0;
      const double nd = norm(dir);
      const Quaternion q = nd > 0.0 ? Quaternion{e.sphere.u} + (e.sphere.v / nd) * dir : Quaternion{e.sphere.u};
      d.push_back(e.sphere.v == 0.0 ? Quaternion{e.sphere.u} : q);
      add_sphere(g.spectrum, e.sphere, 1, 0.0);
      continue;
    }
    bool placed = false;
    for (int attempt = 0; attempt < 10000 && !placed; ++attempt) {
      Quaternion q;
      if (unit(rng) < o.real_probability) {
        std::uniform_real_distribution<double> mod(o.min_modulus, o.max_modulus);
        q = Quaternion{unit(rng) < 0.5 ? -mod(rng) : mod(rng)};
      } else {
        q = random_with_modulus(rng, o.min_modulus, o.max_modulus);
      }
      const EigenSphere s = sphere_of(q);
      if (!admissible(s, distinct, o.gap)) continue;
      d.push_back(q);
      distinct.push_back({s, 1});
      add_sphere(g.spectrum, s, 1, 0.0);
      placed = true;
    }
    if (!placed) throw std::runtime_error("generate_matrix: could not place separated spectrum");
  }

  // Nilpotent part as Jordan-type blocks.
  std::size_t left = o.nilpotent_dim;
  while (left > 0) {
    std::uniform_int_distribution<std::size_t> size(1, std::min(left, o.max_block));
    const std::size_t b = size(rng);
    g.blocks.push_back(b);
    left -= b;
  }
  g.index = g.blocks.empty() ? 0u : static_cast<unsigned>(*std::max_element(g.blocks.begin(), g.blocks.end()));
  if (o.nilpotent_dim > 0) add_sphere(g.spectrum, {0.0, 0.0}, static_cast<int>(o.nilpotent_dim), 0.0);

  HMatrix core(n);
  HMatrix core_inv(n);
  HMatrix core_id(n);
  for (std::size_t i = 0; i < m; ++i) {
    core(i, i) = d[i];
    core_inv(i, i) = inv(d[i]);
    core_id(i, i) = Quaternion{1.0};
  }
  std::size_t pos = m;
  for (std::size_t b : g.blocks) {
    for (std::size_t i = 0; i + 1 < b; ++i) core(pos + i, pos + i + 1) = random_with_modulus(rng, 0.5, 2.0);
    pos += b;
  }

  // S = U diag(sigma) V with log-uniform singular values in [1, cond].
  const HMatrix u = random_unitary(n, rng);
  const HMatrix v = random_unitary(n, rng);
  HMatrix sigma(n);
  HMatrix sigma_inv(n);
  const double log_cond = std::log(o.cond);
  for (std::size_t i = 0; i < n; ++i) {
    double t = unit(rng);
    if (i == 0) t = 0.0;
    if (i + 1 == n && n > 1) t = 1.0;
    const double s = std::exp(t * log_cond);
    sigma(i, i) = Quaternion{s};
    sigma_inv(i, i) = Quaternion{1.0 / s};
  }
  g.s = u * sigma * v;
  g.s_inv = adjoint(v) * sigma_inv * adjoint(u);
  g.a = g.s * core * g.s_inv;
  g.drazin = g.s * core_inv * g.s_inv;
  g.core_projection = g.s * core_id * g.s_inv;
  std::sort(g.spectrum.begin(), g.spectrum.end(), [](const SphereEntry& x, const SphereEntry& y) {
    return x.sphere.u != y.sphere.u ? x.sphere.u < y.sphere.u : x.sphere.v < y.sphere.v;
  });
  return g;
}

GeneratorOptions random_options(std::size_t n, Rng& rng) {
  GeneratorOptions o;
  o.n = n;
  std::uniform_int_distribution<std::size_t> nil(0, n);
  o.nilpotent_dim = nil(rng);
  return o;
}

std::vector<GeneratedMatrix> generate_corpus(std::span<const std::size_t> sizes, std::size_t count,
                                             std::uint64_t seed, double gap) {
  std::vector<GeneratedMatrix> out;
  if (sizes.empty()) return out;
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    GeneratorOptions o = random_options(sizes[i % sizes.size()], rng);
    o.gap = gap;
    out.push_back(generate_matrix(o, rng));
  }
  return out;
}

}  // namespace qspectral
