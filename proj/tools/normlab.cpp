// normlab: norms, probes, and certificates for exotic lattice norms on
// finite truncations. JSON reports on stdout; exit 0 on success (including
// inconclusive certificates), 2 on usage/parse errors, 3 on engine errors.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "normlab/normlab.hpp"

namespace {

using namespace normlab;

constexpr std::uint64_t kDefaultSeed = 20240601;

double default_tol() {
  if (const char* env = std::getenv("NORMLAB_TOL")) {
    try {
      const double t = std::stod(env);
      if (t > 0.0) return t;
    } catch (const std::exception&) {
      throw ParseError("NORMLAB_TOL is not a positive number");
    }
  }
  return kDefaultTol;
}

json load_json_arg(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] != '{' && arg[0] != '[') {
    std::ifstream in(arg);
    if (!in) throw ParseError("cannot open file '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
}

// Spec options shared by all subcommands: --spec takes inline JSON, a file,
// or a bare name; --norm/--p/--base/--base-p compose the common cases.
struct SpecArgs {
  std::string spec;
  std::string norm;
  double p = 0.0;
  std::string base;
  double base_p = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--spec", spec, "norm config: inline JSON, file, or bare name");
    cmd->add_option("--norm", norm, "norm name: sup|l1|lp|day|nakano|orlicz-m|z");
    cmd->add_option("--p", p, "exponent for --norm lp");
    cmd->add_option("--base", base, "base norm for --norm z (JSON, file, or name)");
    cmd->add_option("--base-p", base_p, "exponent when --base is lp");
  }

  NormSpec resolve() const {
    const std::string& src = !spec.empty() ? spec : norm;
    if (src.empty()) throw ParseError("no norm given (use --spec or --norm)");
    if (src[0] == '{') return parse_norm_spec(load_json_arg(src));
    if (src == "lp") {
      if (!(p > 1.0)) throw ParseError("--norm lp needs --p > 1");
      return NormSpec::lp(p);
    }
    if (src == "z") {
      if (base.empty()) throw ParseError("--norm z needs --base");
      if (base[0] == '{') return NormSpec::z(parse_norm_spec(load_json_arg(base)));
      if (base == "lp") {
        if (!(base_p > 1.0)) throw ParseError("--base lp needs --base-p > 1");
        return NormSpec::z(NormSpec::lp(base_p));
      }
      return NormSpec::z(parse_norm_spec(json{{"norm", base}}));
    }
    if (src == "sup" || src == "l1" || src == "day" || src == "nakano" || src == "orlicz-m")
      return parse_norm_spec(json{{"norm", src}});
    // anything else: treat as a file
    return parse_norm_spec(load_json_arg(src));
  }
};

SparseVector load_vector(const std::string& arg) {
  return load_json_arg(arg).get<SparseVector>();
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Scenario reports: one row per computed quantity, each tagged with the
// route that produced it (closed-form | solver | probe | certificate).
struct ScenarioReport {
  std::string id;
  json inputs;
  std::vector<std::tuple<std::string, double, std::string>> rows;
  double tol = kDefaultTol;
  std::uint64_t seed = kDefaultSeed;

  void add(const std::string& label, double value, const std::string& source) {
    rows.emplace_back(label, value, source);
  }

  json to_json() const {
    json jr = json::array();
    for (const auto& [label, value, source] : rows)
      jr.push_back(json{{"label", label}, {"value", value}, {"source", source}});
    return json{{"scenario", id}, {"inputs", inputs}, {"rows", jr},
                {"tol", tol},    {"seed", seed},      {"rng", SeededRng::name()}};
  }

  std::string to_csv() const {
    std::ostringstream out;
    out << "label,value,source\n";
    for (const auto& [label, value, source] : rows)
      out << label << "," << fmt17(value) << "," << source << "\n";
    return out.str();
  }
};

ScenarioReport scenario_hm(std::uint32_t dim, std::uint64_t seed, double tol) {
  const NormSpec orlicz = NormSpec::luxemburg(Modular::orlicz());
  ScenarioReport rep;
  rep.id = "hM";
  rep.inputs = json{{"dim", dim}, {"seed", seed}, {"tol", tol}};
  rep.tol = tol;
  rep.seed = seed;
  for (const std::uint32_t n : {4u, 10u, 100u, 1000u, 10000u}) {
    if (n > dim) continue;
    rep.add("indicator_norm n=" + std::to_string(n), orlicz_indicator_norm(n), "closed-form");
    rep.add("indicator_norm n=" + std::to_string(n), eval_norm(orlicz, ones(n), tol), "solver");
  }
  for (const double d : {0.1, 0.25, 0.4}) {
    for (const std::uint32_t n : {100u, 10000u}) {
      if (n > dim) continue;
      const OrliczResidual r = orlicz_near_unit_residual(d, n);
      const std::string tag = " d=" + fmt17(d).substr(0, 4) + " n=" + std::to_string(n);
      rep.add("residual" + tag, r.residual, "closed-form");
      std::vector<std::pair<Coordinate, double>> entries;
      for (std::uint32_t i = 2; i <= n + 1; ++i) entries.emplace_back(base_coord(i), 1.0 / r.k);
      rep.add("residual" + tag, eval_norm(orlicz, SparseVector(entries), tol), "solver");
    }
  }
  return rep;
}

ScenarioReport scenario_nakano_ld2p(std::uint32_t dim, std::uint64_t seed, double tol) {
  const NormSpec nakano = NormSpec::luxemburg(Modular::nakano());
  ScenarioReport rep;
  rep.id = "nakano-ld2p";
  rep.inputs = json{{"dim", dim}, {"seed", seed}, {"tol", tol}, {"eps", 0.1}};
  rep.tol = tol;
  rep.seed = seed;
  std::vector<std::uint32_t> dims;
  for (const std::uint32_t d : {dim / 8, dim / 4, dim / 2, dim})
    if (d >= 2 && (dims.empty() || d > dims.back())) dims.push_back(d);
  const SliceSpec slice = make_slice(DualFunctional::unit(base_coord(1)), 0.1);
  for (const std::uint32_t d : dims) {
    const auto lb = slice_diameter_lb(nakano, slice, d, 15ull * d, seed, tol);
    rep.add("slice_lb dim=" + std::to_string(d), lb.lower_bound, "probe");
  }
  const auto cert = certify_no_ld2p(nakano, base_coord(1), dim, 1e-6, 2000, seed);
  rep.add("certify_inconclusive", cert.conclusive() ? 0.0 : 1.0, "certificate");
  if (std::isfinite(cert.l)) rep.add("pair_min_l_minus_1", cert.l - 1.0, "solver");
  return rep;
}

ScenarioReport scenario_z_renorm(std::uint32_t dim, std::uint64_t seed, double tol) {
  const NormSpec lp2 = NormSpec::lp(2.0);
  ScenarioReport rep;
  rep.id = "z-renorm";
  rep.inputs = json{{"dim", dim}, {"seed", seed}, {"tol", tol}, {"base", json(lp2)}};
  rep.tol = tol;
  rep.seed = seed;

  const auto strict = phi_strictness_probe(lp2, 4000, seed, tol);
  rep.add("strictness_pass", strict.pass ? 1.0 : 0.0, "probe");

  SeededRng rng(seed);
  std::vector<Coordinate> coords;
  for (std::uint32_t i = 1; i <= dim; ++i) {
    coords.push_back(base_coord(i));
    coords.push_back(tail_coord(i));
  }
  std::vector<SparseVector> points;
  for (int i = 0; i < 5; ++i) {
    SparseVector raw;
    while (raw.empty()) {
      const std::size_t k = 1 + rng.below(8);
      for (std::size_t j = 0; j < k; ++j)
        raw = raw.with(coords[rng.below(coords.size())], rng.sign() * rng.uniform(0.05, 1.0));
    }
    points.push_back(raw / z_norm(lp2, raw, tol));
  }
  const double eps = 0.01;
  bool asq_pass = true;
  double worst = 0.0;
  try {
    const SparseVector h = asq_witness(lp2, points, eps, 4000, tol);
    for (const SparseVector& p : points)
      worst = std::max(worst, z_norm(lp2, p + h, tol));
    asq_pass = worst <= 1.0 + eps;
  } catch (const Error&) {
    asq_pass = false;
  }
  rep.add("asq_pass", asq_pass ? 1.0 : 0.0, "probe");
  rep.add("asq_worst_sum_norm", worst, "solver");

  bool sandwich = true;
  bool scale_ok = true;
  double sphere_dev = 0.0;
  const Modular phi = Modular::phi_sum(lp2);
  for (int i = 0; i < 2000; ++i) {
    SparseVector z;
    while (z.empty()) {
      const std::size_t k = 1 + rng.below(10);
      for (std::size_t j = 0; j < k; ++j)
        z = z.with(coords[rng.below(coords.size())], rng.sign() * rng.uniform(0.05, 1.5));
    }
    const double zn = z_norm(lp2, z, tol);
    const double zi = z_infty_norm(lp2, z, tol);
    sandwich = sandwich && zn >= zi - 1e-10 && zn <= 2.0 * zi + 1e-10;
    sphere_dev = std::max(sphere_dev, std::fabs(phi_sum_eval(z / zn, lp2, tol) - 1.0));
    for (const double lam : {1.1, 2.0, 10.0}) scale_ok = scale_ok && scale_check(phi, z, lam, tol);
  }
  rep.add("sandwich_pass", sandwich ? 1.0 : 0.0, "probe");
  rep.add("scale_check_pass", scale_ok ? 1.0 : 0.0, "probe");
  rep.add("sphere_modular_max_deviation", sphere_dev, "solver");
  return rep;
}

ScenarioReport scenario_lp_slices(std::uint32_t dim, std::uint64_t seed, double tol) {
  ScenarioReport rep;
  rep.id = "lp-slices";
  rep.inputs = json{{"dim", dim}, {"seed", seed}, {"tol", tol}};
  rep.tol = tol;
  rep.seed = seed;
  for (const double p : {1.5, 2.0, 4.0}) {
    const NormSpec spec = NormSpec::lp(p);
    const std::string tag = " p=" + fmt17(p).substr(0, 3);
    const auto out = certify_no_ld2p_symmetric(spec, dim, 1e-9, 2000, seed);
    if (out.conclusive()) {
      const Ld2pCertificate& c = *out.certificate;
      rep.add("K" + tag, c.K, "certificate");
      rep.add("l" + tag, c.l, "certificate");
      rep.add("eps" + tag, c.eps, "certificate");
      rep.add("diameter_bound" + tag, c.diameter_bound, "certificate");
      const auto lb = slice_diameter_lb(spec, make_slice(DualFunctional::unit(base_coord(1)), c.eps),
                                        dim, 20000, seed, tol);
      rep.add("slice_lb" + tag, lb.lower_bound, "probe");
    } else {
      rep.add("inconclusive" + tag, 1.0, "certificate");
    }
    for (const double d : {0.05, 0.1}) {
      const std::string dt = tag + " d=" + fmt17(d).substr(0, 4);
      rep.add("section_residual" + dt, std::pow(1.0 - std::pow(1.0 - d, p), 1.0 / p),
              "closed-form");
      const auto usm = usm_residual_probe(spec, base_coord(1), d, std::min(dim, 12u), 0, seed, tol);
      rep.add("section_residual" + dt, usm.e_estimate, "probe");
    }
  }
  return rep;
}

int run(int argc, char** argv) {
  CLI::App app{"norms, probes, and certificates on finite truncations"};
  app.require_subcommand(1);
  double tol = default_tol();

  // ---- norm ----
  auto* cmd_norm = app.add_subcommand("norm", "evaluate a norm on a vector");
  SpecArgs norm_spec;
  norm_spec.attach(cmd_norm);
  std::string norm_vector;
  cmd_norm->add_option("--vector", norm_vector, "vector literal (JSON or file)")->required();
  cmd_norm->add_option("--tol", tol, "relative solver tolerance");
  cmd_norm->callback([&] {
    const NormSpec spec = norm_spec.resolve();
    const SparseVector v = load_vector(norm_vector);
    emit(json{{"spec", spec}, {"value", eval_norm(spec, v, tol)}, {"tol", tol}});
  });

  // ---- probe ----
  auto* cmd_probe = app.add_subcommand("probe", "empirical geometry probes");
  cmd_probe->require_subcommand(1);
  SpecArgs probe_spec;
  std::string probe_alpha = "b:1";
  std::string probe_functional;
  double probe_eps = 0.1;
  std::uint32_t probe_dim = 30;
  std::uint64_t probe_budget = 2000;
  std::uint64_t probe_trials = 2000;
  std::uint64_t probe_seed = kDefaultSeed;

  auto* usm = cmd_probe->add_subcommand("usm", "residual sup over a coordinate slice");
  probe_spec.attach(usm);
  usm->add_option("--alpha", probe_alpha);
  usm->add_option("--eps", probe_eps)->required();
  usm->add_option("--dim", probe_dim);
  usm->add_option("--budget", probe_budget);
  usm->add_option("--seed", probe_seed);
  usm->add_option("--tol", tol);
  usm->callback([&] {
    emit(usm_residual_probe(probe_spec.resolve(), parse_coordinate(probe_alpha), probe_eps,
                            probe_dim, probe_budget, probe_seed, tol));
  });

  auto* slice = cmd_probe->add_subcommand("slice", "slice diameter lower bound");
  probe_spec.attach(slice);
  slice->add_option("--functional", probe_functional, "dual functional (JSON or file)")->required();
  slice->add_option("--eps", probe_eps)->required();
  slice->add_option("--dim", probe_dim);
  slice->add_option("--budget", probe_budget);
  slice->add_option("--seed", probe_seed);
  slice->add_option("--tol", tol);
  slice->callback([&] {
    DualFunctional f;
    from_json(load_json_arg(probe_functional), f);
    emit(slice_diameter_lb(probe_spec.resolve(), make_slice(f, probe_eps), probe_dim,
                           probe_budget, probe_seed, tol));
  });

  auto* mono = cmd_probe->add_subcommand("monotone", "strict monotonicity sampling");
  probe_spec.attach(mono);
  mono->add_option("--trials", probe_trials);
  mono->add_option("--seed", probe_seed);
  mono->add_option("--tol", tol);
  mono->callback([&] {
    emit(strict_monotonicity_probe(probe_spec.resolve(), probe_trials, probe_seed, tol));
  });

  auto* mid = cmd_probe->add_subcommand("midpoint", "midpoint strict convexity sampling");
  probe_spec.attach(mid);
  mid->add_option("--trials", probe_trials);
  mid->add_option("--seed", probe_seed);
  mid->add_option("--tol", tol);
  mid->callback([&] {
    emit(midpoint_sc_probe(probe_spec.resolve(), probe_trials, probe_seed, tol));
  });

  auto* phis = cmd_probe->add_subcommand("phi-strict", "direct-sum modular strictness");
  probe_spec.attach(phis);
  phis->add_option("--trials", probe_trials);
  phis->add_option("--seed", probe_seed);
  phis->add_option("--tol", tol);
  phis->callback([&] {
    emit(phi_strictness_probe(probe_spec.resolve(), probe_trials, probe_seed, tol));
  });

  // ---- certify ----
  auto* cmd_cert = app.add_subcommand("certify", "constructive no-LD2P certificates");
  cmd_cert->require_subcommand(1);
  SpecArgs cert_spec;
  std::string cert_alpha = "b:1";
  std::uint32_t cert_dim = 16;
  std::uint64_t cert_trials = 2000;
  std::uint64_t cert_seed = kDefaultSeed;
  bool cert_explain = false;

  const auto attach_cert = [&](CLI::App* c, bool with_alpha) {
    cert_spec.attach(c);
    if (with_alpha) c->add_option("--alpha", cert_alpha);
    c->add_option("--dim", cert_dim);
    c->add_option("--tol", tol);
    c->add_option("--trials", cert_trials);
    c->add_option("--seed", cert_seed);
    c->add_flag("--explain", cert_explain, "emit the inequality chain");
  };
  const auto emit_cert = [&](const CertifyOutcome& out) {
    json j = out;
    if (cert_explain && out.conclusive()) j["explain"] = explain_certificate(*out.certificate);
    emit(j);
  };

  auto* ld2p = cmd_cert->add_subcommand("ld2p", "finite-indicator lattice constant route");
  attach_cert(ld2p, true);
  ld2p->callback([&] {
    emit_cert(certify_no_ld2p(cert_spec.resolve(), parse_coordinate(cert_alpha), cert_dim, tol,
                              cert_trials, cert_seed));
  });

  auto* ld2pl = cmd_cert->add_subcommand("ld2p-linfty", "all-ones lattice constant route");
  attach_cert(ld2pl, true);
  ld2pl->callback([&] {
    emit_cert(certify_no_ld2p_linfty(cert_spec.resolve(), parse_coordinate(cert_alpha), cert_dim,
                                     tol, cert_trials, cert_seed));
  });

  auto* sym = cmd_cert->add_subcommand("symmetric", "single-pair route for 1-symmetric norms");
  attach_cert(sym, false);
  sym->callback([&] {
    emit_cert(certify_no_ld2p_symmetric(cert_spec.resolve(), cert_dim, tol, cert_trials, cert_seed));
  });

  // ---- asq ----
  auto* cmd_asq = app.add_subcommand("asq", "almost-squareness witness for the z norm");
  SpecArgs asq_base;
  asq_base.attach(cmd_asq);
  std::string asq_points;
  double asq_eps = 0.01;
  std::uint32_t asq_dim = 2000;
  cmd_asq->add_option("--points", asq_points, "JSON array of vector literals (or file)");
  cmd_asq->add_option("--eps", asq_eps)->required();
  cmd_asq->add_option("--dim", asq_dim, "budget for the witness's Tail index");
  cmd_asq->add_option("--tol", tol);
  cmd_asq->callback([&] {
    const NormSpec base = asq_base.resolve();
    std::vector<SparseVector> points;
    if (!asq_points.empty()) {
      for (const auto& jp : load_json_arg(asq_points)) points.push_back(jp.get<SparseVector>());
    }
    const SparseVector h = asq_witness(base, points, asq_eps, asq_dim, tol);
    json checks = json::array();
    for (const SparseVector& p : points) {
      checks.push_back(json{{"point_norm", z_norm(base, p, tol)},
                            {"sum_norm", z_norm(base, p + h, tol)}});
    }
    emit(json{{"witness", h}, {"eps", asq_eps}, {"dim", asq_dim}, {"checks", checks},
              {"tol", tol}});
  });

  // ---- scenario ----
  auto* cmd_scn = app.add_subcommand("scenario", "worked-example scripts");
  std::string scn_name;
  std::uint32_t scn_dim = 0;
  std::uint64_t scn_seed = kDefaultSeed;
  std::string scn_format = "json";
  cmd_scn->add_option("name", scn_name, "hM | nakano-ld2p | z-renorm | lp-slices")->required();
  cmd_scn->add_option("--dim", scn_dim);
  cmd_scn->add_option("--seed", scn_seed);
  cmd_scn->add_option("--format", scn_format, "json | csv");
  cmd_scn->add_option("--tol", tol);
  cmd_scn->callback([&] {
    ScenarioReport rep;
    if (scn_name == "hM") {
      rep = scenario_hm(scn_dim ? scn_dim : 10000, scn_seed, tol);
    } else if (scn_name == "nakano-ld2p") {
      rep = scenario_nakano_ld2p(scn_dim ? scn_dim : 200, scn_seed, tol);
    } else if (scn_name == "z-renorm") {
      rep = scenario_z_renorm(scn_dim ? scn_dim : 30, scn_seed, tol);
    } else if (scn_name == "lp-slices") {
      rep = scenario_lp_slices(scn_dim ? scn_dim : 16, scn_seed, tol);
    } else {
      throw ParseError("unknown scenario '" + scn_name + "'");
    }
    if (scn_format == "csv") {
      std::cout << rep.to_csv();
    } else if (scn_format == "json") {
      emit(rep.to_json());
    } else {
      throw ParseError("unknown format '" + scn_format + "'");
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << json{{"error", e.kind()}, {"message", e.what()}}.dump() << "\n";
    return 3;
  } catch (const json::exception& e) {
    std::cerr << json{{"error", "ParseError"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
}
