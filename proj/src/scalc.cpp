#include "qspectral/scalc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/LU>

#include "linalg.hpp"

namespace qspectral {

namespace {

constexpr int kMaxNodes = 1 << 14;
constexpr double kQuadTol = 1e-10;

bool pole_outside(cplx pole, cplx center, double radius) {
  return std::abs(pole - center) > radius * (1.0 + 1e-9) &&
         std::abs(std::conj(pole) - center) > radius * (1.0 + 1e-9);
}

/// Winding number of f(boundary) - p around 0 on the circle (center, radius),
/// or -1 when the image passes too close to p.
int winding_about(const IntrinsicFn& f, cplx p, cplx center, double radius) {
  constexpr int samples = 1024;
  double total = 0.0;
  cplx prev = f(center + radius) - p;
  double min_abs = std::abs(prev);
  for (int m = 1; m <= samples; ++m) {
    const double theta = 2.0 * std::numbers::pi * m / samples;
    const cplx cur = f(center + std::polar(radius, theta)) - p;
    min_abs = std::min(min_abs, std::abs(cur));
    total += std::arg(cur / prev);
    prev = cur;
  }
  if (min_abs <= 1e-9) return -1;
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

}  // namespace

// --- IntrinsicFn -------------------------------------------------------------

IntrinsicFn::IntrinsicFn(std::string name, SliceMap upper, std::vector<cplx> poles, DiskTest disk_test)
    : name_(std::move(name)), upper_(std::move(upper)), poles_(std::move(poles)), disk_test_(std::move(disk_test)) {}

cplx IntrinsicFn::operator()(cplx z) const {
  if (z.imag() > 0.0) return upper_(z);
  if (z.imag() < 0.0) return std::conj(upper_(std::conj(z)));
  return {upper_(z).real(), 0.0};
}

bool IntrinsicFn::admits(cplx center, double radius) const {
  for (const cplx& p : poles_)
    if (!pole_outside(p, center, radius)) return false;
  return !disk_test_ || disk_test_(center, radius);
}

double IntrinsicFn::f0(double u, double v) const {
  const cplx z(u, v);
  return 0.5 * ((*this)(z) + (*this)(std::conj(z))).real();
}

double IntrinsicFn::f1(double u, double v) const {
  const cplx z(u, v);
  return (((*this)(z) - (*this)(std::conj(z))) / cplx(0.0, 2.0)).real();
}

namespace fn {

IntrinsicFn constant(double c) {
  std::ostringstream name;
  name << "const:" << c;
  return IntrinsicFn(name.str(), [c](cplx) { return cplx(c); });
}

IntrinsicFn poly(std::vector<double> coeffs) {
  std::ostringstream name;
  name << "poly:";
  for (std::size_t i = 0; i < coeffs.size(); ++i) name << (i ? "," : "") << coeffs[i];
  return IntrinsicFn(name.str(), [c = std::move(coeffs)](cplx z) {
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
  });
}

IntrinsicFn identity() { return IntrinsicFn("id", [](cplx z) { return z; }); }

IntrinsicFn recip() { return IntrinsicFn("recip", [](cplx z) { return 1.0 / z; }, {cplx(0.0)}); }

IntrinsicFn exp() { return IntrinsicFn("exp", [](cplx z) { return std::exp(z); }); }

IntrinsicFn drazin_selector(double zero_radius) {
  return IntrinsicFn(
      "drazin-selector",
      [zero_radius](cplx z) { return std::abs(z) < zero_radius ? cplx(0.0) : 1.0 / z; }, {},
      [zero_radius](cplx center, double radius) {
        const double c = std::abs(center);
        return c + radius < zero_radius || c - radius > zero_radius;
      });
}

IntrinsicFn compose(const IntrinsicFn& g, const IntrinsicFn& f) {
  if (g.has_disk_test())
    throw std::invalid_argument("compose: outer function must have point singularities only");
  return IntrinsicFn(
      g.name() + " o " + f.name(), [g, f](cplx z) { return g(f(z)); }, {},
      [g, f](cplx center, double radius) {
        if (!f.admits(center, radius)) return false;
        for (const cplx& p : g.poles()) {
          if (winding_about(f, p, center, radius) != 0) return false;
          if (p.imag() != 0.0 && winding_about(f, std::conj(p), center, radius) != 0) return false;
        }
        return true;
      });
}

IntrinsicFn product(const IntrinsicFn& f, const IntrinsicFn& g) {
  std::vector<cplx> poles = f.poles();
  poles.insert(poles.end(), g.poles().begin(), g.poles().end());
  return IntrinsicFn(
      "(" + f.name() + ")*(" + g.name() + ")", [f, g](cplx z) { return f(z) * g(z); }, poles,
      [f, g](cplx center, double radius) { return f.admits(center, radius) && g.admits(center, radius); });
}

IntrinsicFn parse(const std::string& spec) {
  if (spec == "recip") return recip();
  if (spec == "exp") return exp();
  if (spec == "id") return identity();
  if (spec == "one") return constant(1.0);
  if (spec.rfind("poly:", 0) == 0) {
    std::vector<double> coeffs;
    std::stringstream in(spec.substr(5));
    std::string item;
    while (std::getline(in, item, ',')) {
      std::size_t used = 0;
      double c = 0.0;
      try {
        c = std::stod(item, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != item.size()) throw FormatError("bad polynomial coefficient '" + item + "'");
      coeffs.push_back(c);
    }
    if (coeffs.empty()) throw FormatError("polynomial needs at least one coefficient");
    return poly(std::move(coeffs));
  }
  throw FormatError("unknown function specifier '" + spec + "'");
}

}  // namespace fn

double holomorphy_residual(const IntrinsicFn& f, cplx z, double h) {
  const cplx fx = (f(z + h) - f(z - h)) / (2.0 * h);
  const cplx fy = (f(z + cplx(0.0, h)) - f(z - cplx(0.0, h))) / (2.0 * h);
  return 0.5 * std::abs(fx + cplx(0.0, 1.0) * fy);
}

// --- contours -----------------------------------------------------------------

namespace {

std::vector<cplx> representatives(const Spectrum& spectrum) {
  std::vector<cplx> pts;
  for (const auto& s : spectrum.spheres) {
    pts.emplace_back(s.sphere.u, s.sphere.v);
    if (s.sphere.v > 0.0) pts.emplace_back(s.sphere.u, -s.sphere.v);
  }
  return pts;
}

}  // namespace

double spectral_gap(const Spectrum& spectrum) {
  const auto pts = representatives(spectrum);
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) gap = std::min(gap, std::abs(pts[i] - pts[j]));
  return gap;
}

SliceContour build_contours(const Spectrum& spectrum, std::span<const EigenSphere> subset,
                            const ContourOptions& options) {
  const double gap = spectral_gap(spectrum);
  if (gap < 1e-6) throw MathError("spectral sets not separated");
  double radius = std::min(options.margin * gap, options.max_radius);
  if (options.radius) {
    radius = *options.radius;
    if (!(radius > 0.0) || !(radius < 0.5 * gap))
      throw MathError("contour radius incompatible with the spectral gap");
  }
  if (options.nodes < 4) throw std::invalid_argument("build_contours: need at least 4 nodes per circle");

  SliceContour contour;
  for (const auto& s : subset) {
    const int idx = spectrum.find(s);
    if (idx < 0) throw MathError("sphere is not part of the spectrum");
    const EigenSphere& sp = spectrum.spheres[static_cast<std::size_t>(idx)].sphere;
    contour.circles.push_back({cplx(sp.u, sp.v), radius, options.nodes});
    if (sp.v > 0.0) contour.circles.push_back({cplx(sp.u, -sp.v), radius, options.nodes});
  }
  return contour;
}

SliceContour build_contours(const Spectrum& spectrum, const ContourOptions& options) {
  std::vector<EigenSphere> all;
  for (const auto& s : spectrum.spheres) all.push_back(s.sphere);
  return build_contours(spectrum, all, options);
}

SliceContour fit_contours(SliceContour contour, const IntrinsicFn& f) {
  for (auto& c : contour.circles) {
    int halvings = 0;
    while (!f.admits(c.center, c.radius)) {
      if (++halvings > 20) throw MathError("contour leaves the domain of " + f.name());
      c.radius *= 0.5;
    }
  }
  return contour;
}

// --- quadrature -----------------------------------------------------------------

namespace {

class ResolventKernel {
 public:
  explicit ResolventKernel(const HMatrix& a)
      : n_(a.size()), x_(complex_adjoint(a).matrix()) {}

  /// chi(S_L^{-1}(s, A)) * chi(w I) for s, w in C_i.
  CMatrix weighted(cplx s, cplx w) const {
    const auto dim = x_.rows();
    // Q_s = (X - s)(X - conj s); two solves keep the conditioning of each
    // factor instead of their product.
    CMatrix shifted = x_;
    shifted.diagonal().array() -= std::conj(s);
    const CMatrix rhs = x_ - detail::slice_scalar(n_, std::conj(s));
    CMatrix k = shifted.partialPivLu().solve(rhs);
    shifted.diagonal().array() += std::conj(s) - s;
    k = -shifted.partialPivLu().solve(k);
    const auto nn = static_cast<Eigen::Index>(n_);
    k.leftCols(nn) *= w;
    k.rightCols(dim - nn) *= std::conj(w);
    return k;
  }

  CMatrix zero() const { return CMatrix::Zero(x_.rows(), x_.cols()); }

 private:
  std::size_t n_;
  CMatrix x_;
};

/// (1/N) sum over nodes theta = 2 pi (m + offset) / N of the weighted kernel.
CMatrix circle_sum(const ResolventKernel& kernel, const IntrinsicFn& f, const ContourCircle& c, int nodes,
                   double offset, double& max_term) {
  CMatrix sum = kernel.zero();
  for (int m = 0; m < nodes; ++m) {
    const double theta = 2.0 * std::numbers::pi * (m + offset) / nodes;
    const cplx e = std::polar(1.0, theta);
    const cplx s = c.center + c.radius * e;
    const cplx fs = f(s);
    if (fs == cplx(0.0)) continue;
    // ds_i = ds (-i) = r e^{i theta} d theta on the circle.
    const CMatrix term = kernel.weighted(s, c.radius * e * fs);
    max_term = std::max(max_term, term.norm());
    sum += term;
  }
  return sum / static_cast<double>(nodes);
}

}  // namespace

HMatrix func_calc(const IntrinsicFn& f, const HMatrix& a, const SliceContour& contour, QuadratureStats* stats) {
  for (const auto& c : contour.circles)
    if (!f.admits(c.center, c.radius)) throw MathError("contour leaves the domain of " + f.name());

  const ResolventKernel kernel(a);
  int nodes = contour.circles.empty() ? 0 : contour.circles.front().nodes;
  for (const auto& c : contour.circles) nodes = std::max(nodes, c.nodes);

  // Largest single integrand value; sets the scale of rounding in the sum.
  double max_term = 0.0;
  std::vector<CMatrix> sums;
  for (const auto& c : contour.circles) sums.push_back(circle_sum(kernel, f, c, nodes, 0.0, max_term));
  const auto total = [&] {
    CMatrix t = kernel.zero();
    for (const auto& s : sums) t += s;
    return t;
  };

  CMatrix current = total();
  double delta = std::numeric_limits<double>::infinity();
  while (!contour.circles.empty()) {
    if (2 * nodes > kMaxNodes) {
      std::ostringstream msg;
      msg << "quadrature failed (last delta " << delta << ")";
      throw QuadratureError(msg.str(), delta);
    }
    for (std::size_t i = 0; i < sums.size(); ++i)
      sums[i] = 0.5 * (sums[i] + circle_sum(kernel, f, contour.circles[i], nodes, 0.5, max_term));
    nodes *= 2;
    CMatrix next = total();
    // Frobenius norms of adjoint images are sqrt(2) times the quaternionic ones.
    delta = (next - current).norm() / std::sqrt(2.0);
    current = std::move(next);
    if (delta <= kQuadTol * (1.0 + current.norm() / std::sqrt(2.0))) break;
  }
  if (stats) {
    stats->nodes_per_circle = nodes;
    stats->last_delta = contour.circles.empty() ? 0.0 : delta;
  }
  return from_adjoint(current, 1e-9 * (1.0 + current.norm() + max_term));
}

HMatrix func_calc(const IntrinsicFn& f, const HMatrix& a, const ContourOptions& options) {
  const Spectrum spectrum = s_spectrum(a);
  return func_calc(f, a, fit_contours(build_contours(spectrum, options), f));
}

HMatrix riesz_projection(const HMatrix& a, std::span<const EigenSphere> subset, const ContourOptions& options) {
  const Spectrum spectrum = s_spectrum(a);
  return func_calc(fn::constant(1.0), a, build_contours(spectrum, subset, options));
}

SpectralMappingReport spectral_mapping_check(const IntrinsicFn& f, const HMatrix& a, const ContourOptions& options) {
  const Spectrum spectrum = s_spectrum(a);
  SpectralMappingReport report;
  report.value = func_calc(f, a, fit_contours(build_contours(spectrum, options), f));
  for (const auto& s : spectrum.spheres) {
    const cplx w = f(slice_point(s.sphere));
    add_sphere(report.image, sphere_of(w), s.mult, 1e-9 * (1.0 + std::abs(w)));
  }
  report.computed = s_spectrum(report.value);
  report.match = match_spheres(report.image, report.computed.spheres);
  return report;
}

CompositionReport composition_check(const IntrinsicFn& f, const IntrinsicFn& g, const HMatrix& a,
                                    const ContourOptions& options) {
  CompositionReport report;
  const HMatrix fa = func_calc(f, a, options);
  report.nested = func_calc(g, fa, options);
  report.composed = func_calc(fn::compose(g, f), a, options);
  report.deviation = relative_deviation(report.composed, report.nested);
  return report;
}

}  // namespace qspectral
