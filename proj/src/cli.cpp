#include "qspectral/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qspectral/drazin.hpp"
#include "qspectral/geninv.hpp"
#include "qspectral/io.hpp"
#include "qspectral/scalc.hpp"
#include "qspectral/sspec.hpp"
#include "qspectral/suite.hpp"

namespace qspectral::cli {

namespace {

using io::json;

constexpr double kDefaultTol = 1e-7;

struct Options {
  std::string input;
  std::string output;
  std::optional<double> radius;
  int nodes = 64;
  double margin = 1.0 / 3.0;
  std::string fn_spec;
  std::vector<std::string> spheres;
  std::string route = "algebraic";
  std::string routes = "all";
  std::optional<double> tol;
  std::string s_value;
  bool series = false;
  unsigned power = 256;
};

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) throw FormatError(what + ": not a number: '" + text + "'");
  return v;
}

std::vector<double> parse_list(const std::string& text, std::size_t expected, const std::string& what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_number(item, what));
  if (out.size() != expected)
    throw FormatError(what + ": expected " + std::to_string(expected) + " comma-separated numbers");
  return out;
}

/// Residual tolerance: --tol, else QSPECTRAL_TOL, else the default.
double residual_tolerance(const Options& o) {
  if (o.tol) return *o.tol;
  if (const char* env = std::getenv("QSPECTRAL_TOL"); env && *env) {
    const double t = parse_number(env, "QSPECTRAL_TOL");
    if (!(t > 0.0)) throw FormatError("QSPECTRAL_TOL must be positive");
    return t;
  }
  return kDefaultTol;
}

ContourOptions contour_options(const Options& o) {
  ContourOptions c;
  c.radius = o.radius;
  c.nodes = o.nodes;
  c.margin = o.margin;
  return c;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw FormatError(o.output + ": cannot open file for writing");
  f << text;
  if (!f) throw FormatError(o.output + ": write failed");
}

std::string format_double(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

IntrinsicFn resolve_fn(const std::string& spec, const HMatrix& a) {
  if (spec == "drazin-selector") {
    const double gap = zero_gap(s_spectrum(a));
    return fn::drazin_selector(std::isfinite(gap) ? 0.5 * gap : 1.0);
  }
  return fn::parse(spec);
}

json drazin_document(const HMatrix& a, const DrazinResult& r, double tol) {
  io::DrazinDocument d;
  d.result = r;
  const DrazinResiduals res = verify_drazin(a, r.inverse, r.index);
  d.residuals = {{"commute", res.commute}, {"square", res.square}, {"power", res.power}, {"nilpotent", res.nilpotent}};
  d.tolerances = {{"residual", tol}};
  return io::qdrz_to_json(d);
}

struct Row {
  std::string route;
  std::string check;
  double value;
};

int verify_command(const Options& o, const HMatrix& a, std::string& text) {
  const double tol = residual_tolerance(o);
  std::vector<DrazinRoute> routes;
  if (o.routes == "all") {
    routes = {DrazinRoute::algebraic, DrazinRoute::projection, DrazinRoute::funcalc};
  } else {
    std::stringstream in(o.routes);
    std::string item;
    while (std::getline(in, item, ',')) routes.push_back(parse_route(item));
  }
  const ContourOptions copt = contour_options(o);
  const DrazinResult reference = drazin_algebraic(a);
  std::vector<Row> rows;
  for (DrazinRoute route : routes) {
    const DrazinResult r = drazin(a, route, copt);
    const std::string name = std::string(route_name(route)) + (r.deferred ? "*" : "");
    const DrazinResiduals d = verify_drazin(a, r.inverse, r.index);
    rows.push_back({name, "AB-BA", d.commute});
    rows.push_back({name, "AB^2-B", d.square});
    rows.push_back({name, "A^(k+1)B-A^k", d.power});
    rows.push_back({name, "(A-A^2B)^k", d.nilpotent});
    const ProjectionResiduals p = verify_projection(a, r);
    rows.push_back({name, "P^2-P", p.idempotent});
    rows.push_back({name, "PA-AP", p.commute});
    rows.push_back({name, "(AP)^k", p.nilpotent});
    rows.push_back({name, "(A+P)^-1(I-P)", p.lemma});
    if (route != DrazinRoute::algebraic) rows.push_back({name, "vs algebraic", relative_deviation(reference.inverse, r.inverse)});
  }
  std::ostringstream t;
  t << "index " << reference.index << "\n";
  t << std::left << std::setw(12) << "route" << std::setw(16) << "check" << std::setw(26) << "residual"
    << std::setw(12) << "tolerance" << "status\n";
  std::ostringstream tol_text;
  tol_text << tol;
  bool ok = true;
  for (const auto& row : rows) {
    const bool pass = row.value <= tol;
    ok = ok && pass;
    t << std::left << std::setw(12) << row.route << std::setw(16) << row.check << std::setw(26)
      << format_double(row.value) << std::setw(12) << tol_text.str() << (pass ? "ok" : "FAIL") << "\n";
  }
  if (std::any_of(rows.begin(), rows.end(), [](const Row& r) { return r.route.back() == '*'; }))
    t << "* zero sphere too close to the rest of the spectrum; algebraic result reported\n";
  t << (ok ? "all residuals within tolerance\n" : "tolerance exceeded\n");
  text = t.str();
  return ok ? kExitOk : kExitMath;
}

int dispatch(const std::string& verb, const Options& o, std::ostream& out) {
  std::string text;
  int code = kExitOk;
  if (verb == "suite") {
    suite::Config config;
    if (!o.input.empty()) config = suite::parse_config(io::read_file(o.input));
    if (o.tol) config.tolerance = *o.tol;
    const suite::Report report = suite::run(config);
    text = io::dump(report.to_json());
    code = report.pass() ? kExitOk : kExitMath;
    emit(o, out, text);
    return code;
  }

  const HMatrix a = io::read_qmat_file(o.input);
  const ContourOptions copt = contour_options(o);
  if (verb == "spectrum") {
    const Spectrum s = s_spectrum(a);
    text = io::dump(io::qspec_to_json(s, {{"sphere", s.tol_sphere}}));
  } else if (verb == "resolvent") {
    const auto c = parse_list(o.s_value, 4, "--s");
    const Quaternion q{c[0], c[1], c[2], c[3]};
    if (o.series) {
      const SeriesResult r = pseudo_resolvent_series(q, a);
      text = io::dump(io::qmat_to_json(r.value));
    } else {
      text = io::dump(io::qmat_to_json(s_resolvent_left(q, a)));
    }
  } else if (verb == "radius") {
    const GelfandSequence g = spectral_radius_gelfand(a, o.power);
    json seq = json::array();
    for (std::size_t i = 0; i < g.exponents.size(); ++i) seq.push_back({{"k", g.exponents[i]}, {"estimate", g.estimates[i]}});
    json doc = {{"format", "qradius-1"},
                {"spectral_radius", s_spectrum(a).max_radius()},
                {"norm", operator_norm(a)},
                {"gelfand", std::move(seq)}};
    text = io::dump(doc);
  } else if (verb == "funcalc") {
    if (o.fn_spec.empty()) throw FormatError("funcalc: --fn is required");
    const IntrinsicFn f = resolve_fn(o.fn_spec, a);
    text = io::dump(io::qmat_to_json(func_calc(f, a, copt)));
  } else if (verb == "riesz") {
    if (o.spheres.empty()) throw FormatError("riesz: at least one --sphere u,v is required");
    std::vector<EigenSphere> subset;
    for (const auto& s : o.spheres) {
      const auto uv = parse_list(s, 2, "--sphere");
      if (uv[1] < 0.0) throw FormatError("--sphere: v must be nonnegative");
      subset.push_back({uv[0], uv[1]});
    }
    text = io::dump(io::qmat_to_json(riesz_projection(a, subset, copt)));
  } else if (verb == "ginverse") {
    text = io::dump(io::qmat_to_json(moore_penrose(a)));
  } else if (verb == "group") {
    text = io::dump(io::qmat_to_json(group_inverse(a)));
  } else if (verb == "drazin") {
    const DrazinResult r = drazin(a, parse_route(o.route), copt);
    text = io::dump(drazin_document(a, r, residual_tolerance(o)));
  } else if (verb == "verify") {
    code = verify_command(o, a, text);
  } else {
    throw FormatError("unknown verb '" + verb + "'");
  }
  emit(o, out, text);
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quaternionic matrix spectra, functional calculus and generalized inverses", "qspectral"};
  app.require_subcommand(1);
  Options o;
  app.add_option("-o,--output", o.output, "Write the result to this file instead of stdout");

  const auto add_input = [&](CLI::App* sub) { sub->add_option("input", o.input, "qmat-1 matrix file")->required(); };
  const auto add_contour = [&](CLI::App* sub) {
    sub->add_option("--radius", o.radius, "Fixed contour radius");
    sub->add_option("--nodes", o.nodes, "Initial quadrature nodes per circle")->check(CLI::Range(4, 1 << 14));
    sub->add_option("--margin", o.margin, "Contour radius as a fraction of the spectral gap")->check(CLI::Range(1e-3, 0.49));
  };

  add_input(app.add_subcommand("spectrum", "S-spectrum as a qspec-1 document"));
  auto* resolvent = app.add_subcommand("resolvent", "Left S-resolvent at a quaternion");
  add_input(resolvent);
  resolvent->add_option("--s", o.s_value, "Quaternion a,b,c,d")->required();
  resolvent->add_flag("--series", o.series, "Evaluate the inverse pencil by its power series instead");
  auto* radius = app.add_subcommand("radius", "Spectral radius and Gelfand estimates");
  add_input(radius);
  radius->add_option("--power", o.power, "Largest exponent")->check(CLI::Range(1u, 1u << 20));
  auto* funcalc = app.add_subcommand("funcalc", "S-functional calculus f(A)");
  add_input(funcalc);
  add_contour(funcalc);
  funcalc->add_option("--fn", o.fn_spec, "poly:c0,c1,... | recip | exp | id | one | drazin-selector")->required();
  auto* riesz = app.add_subcommand("riesz", "Riesz projection onto a set of spheres");
  add_input(riesz);
  add_contour(riesz);
  riesz->add_option("--sphere", o.spheres, "Sphere u,v (repeatable)")->required();
  add_input(app.add_subcommand("ginverse", "Moore-Penrose generalized inverse"));
  add_input(app.add_subcommand("group", "Group (commuting generalized) inverse"));
  auto* drz = app.add_subcommand("drazin", "Drazin inverse as a qdrz-1 document");
  add_input(drz);
  add_contour(drz);
  drz->add_option("--route", o.route, "algebraic | projection | funcalc");
  drz->add_option("--tol", o.tol, "Residual tolerance recorded in the document");
  auto* verify = app.add_subcommand("verify", "Residual table for the Drazin routes");
  add_input(verify);
  add_contour(verify);
  verify->add_option("--routes", o.routes, "all or a comma-separated list of routes");
  verify->add_option("--tol", o.tol, "Residual tolerance");
  auto* suite_cmd = app.add_subcommand("suite", "Property suite over generated matrices");
  suite_cmd->add_option("config", o.input, "JSON config (sizes, seed(s), count, gap, tolerance)");
  suite_cmd->add_option("--tol", o.tol, "Tolerance applied to every property");

  static const std::vector<std::string> verbs{"spectrum", "resolvent", "radius", "funcalc", "riesz",
                                             "ginverse", "group", "drazin", "verify", "suite"};
  const auto first_word = std::find_if(args.begin(), args.end(), [](const std::string& s) { return !s.empty() && s[0] != '-'; });
  if (first_word != args.end() && (first_word == args.begin() || (*(first_word - 1) != "-o" && *(first_word - 1) != "--output")) &&
      std::find(verbs.begin(), verbs.end(), *first_word) == verbs.end()) {
    err << "qspectral: unknown verb '" << *first_word << "'\n";
    return kExitInput;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qspectral: " << e.what() << "\n";
    return kExitInput;
  }

  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    return dispatch(verb, o, out);
  } catch (const FormatError& e) {
    err << "qspectral: " << e.what() << "\n";
    return kExitInput;
  } catch (const DimensionError& e) {
    err << "qspectral: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "qspectral: " << e.what() << "\n";
    return kExitMath;
  }
}

}  // namespace qspectral::cli
