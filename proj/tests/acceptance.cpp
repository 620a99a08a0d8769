// Acceptance suite: one pass/fail line per criterion. Exit code = number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "normlab/normlab.hpp"
#include "support/oracle.hpp"

using namespace normlab;

namespace {

const NormSpec g_nakano = NormSpec::luxemburg(Modular::nakano());
const NormSpec g_orlicz = NormSpec::luxemburg(Modular::orlicz());
const NormSpec g_lp2 = NormSpec::lp(2.0);

int g_failures = 0;

void report(int idx, bool ok, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", idx, what.c_str(),
              detail.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SparseVector random_z_vector(SeededRng& rng, std::uint32_t dim, std::size_t max_support,
                             double hi) {
  SparseVector v;
  const std::size_t k = 1 + rng.below(max_support);
  while (v.support_size() < k) {
    const std::uint32_t idx = 1 + static_cast<std::uint32_t>(rng.below(dim));
    const Coordinate c = (rng.next() & 1u) ? base_coord(idx) : tail_coord(idx);
    v = v.with(c, rng.sign() * rng.uniform(0.05, hi));
  }
  return v;
}

// 1. Indicator norms in the piecewise-exponential Orlicz space match
//    2 - 2 ln 2 + ln n to 1e-9 relative, in under a second.
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const std::uint32_t n : {4u, 10u, 100u, 1000u, 10000u}) {
    const double formula = oracle::orlicz_indicator_norm(n);
    const double solved = eval_norm(g_orlicz, ones(n));
    worst = std::max(worst, std::fabs(solved - formula) / formula);
  }
  const double s4 = eval_norm(g_orlicz, ones(4));
  const double dt = seconds_since(t0);
  const bool ok = worst <= 1e-9 && std::fabs(s4 - 2.0) <= 2e-9 && dt < 1.0;
  report(1, ok, "indicator-norm closed form",
         "worst rel err " + std::to_string(worst) + ", ||s_4|| = " + std::to_string(s4) +
             ", " + std::to_string(dt) + " s");
}

// 2. Residual norms of the explicit near-unit family match the displayed
//    quotient to 1e-8, increase in n, stay below 1.
void criterion_2() {
  bool ok = true;
  double worst = 0.0;
  for (const double d : {0.1, 0.25, 0.4}) {
    double prev = 0.0;
    for (const std::uint32_t n : {100u, 10000u}) {
      const OrliczResidual r = orlicz_near_unit_residual(d, n);
      const SparseVector xn = orlicz_near_unit_vector(d, n);
      const SparseVector off = xn - xn.at(base_coord(1)) * SparseVector::unit(base_coord(1));
      const double solved = eval_norm(g_orlicz, off);
      worst = std::max(worst, std::fabs(solved - r.residual));
      ok = ok && std::fabs(solved - r.residual) <= 1e-8;
      ok = ok && solved < 1.0 && solved > prev;
      prev = solved;
    }
  }
  report(2, ok, "near-unit residual reproduction", "worst abs err " + std::to_string(worst));
}

// 3. The structured section candidate reproduces (1 - (1-d)^p)^{1/p}.
void criterion_3() {
  bool ok = true;
  double worst = 0.0;
  for (const double p : {1.5, 2.0, 4.0}) {
    for (const double d : {0.05, 0.1}) {
      const auto rep = usm_residual_probe(NormSpec::lp(p), base_coord(1), d, 8, 0, 20240601);
      const double err = std::fabs(rep.e_estimate - oracle::lp_section_residual(p, d));
      worst = std::max(worst, err);
      ok = ok && err <= 1e-10;
    }
  }
  report(3, ok, "lp section formula", "worst abs err " + std::to_string(worst));
}

// 4. Direct-sum gauge suite on 10^4 seeded vectors: max-norm sandwich, scale
//    property, modular = 1 on the sphere.
void criterion_4() {
  SeededRng rng(44001);
  const Modular phi = Modular::phi_sum(g_lp2);
  bool sandwich = true, scale = true, sphere = true;
  double worst_dev = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const SparseVector z = random_z_vector(rng, 30, 20, 1.5);
    const double zn = z_norm(g_lp2, z);
    const double zi = z_infty_norm(g_lp2, z);
    sandwich = sandwich && zn >= zi - 1e-10 && zn <= 2.0 * zi + 1e-10;
    for (const double lam : {1.1, 2.0, 10.0}) scale = scale && scale_check(phi, z, lam);
    const double dev = std::fabs(phi_sum_eval(z / zn, g_lp2) - 1.0);
    worst_dev = std::max(worst_dev, dev);
    sphere = sphere && dev <= 1e-9;
  }
  report(4, sandwich && scale && sphere, "direct-sum gauge suite",
         std::string("sandwich ") + (sandwich ? "ok" : "bad") + ", scale " +
             (scale ? "ok" : "bad") + ", max sphere modular dev " + std::to_string(worst_dev));
}

// 5. Strictness of the direct-sum modular: pass over 10^4 seeded pairs with a
//    strictly convex base; the flat-face counterexample for a sup base is
//    found within 10^3 trials.
void criterion_5() {
  const auto pass = phi_strictness_probe(g_lp2, 12005, 55001);
  const auto witness = phi_strictness_probe(NormSpec::sup(), 1000, 55001);
  const bool ok = pass.pass && !witness.pass && witness.witness.has_value() &&
                  witness.trials <= 1000;
  report(5, ok, "direct-sum strictness",
         "strict-base pairs " + std::to_string(pass.trials) + ", sup witness after " +
             std::to_string(witness.trials) + " trials");
}

// 6. Almost-squareness witness for 5 random unit vectors at eps = 0.01,
//    verified by the solver, in under a second.
void criterion_6() {
  const auto t0 = std::chrono::steady_clock::now();
  SeededRng rng(66001);
  std::vector<SparseVector> points;
  for (int i = 0; i < 5; ++i) {
    const SparseVector raw = random_z_vector(rng, 30, 20, 1.0);
    points.push_back(raw / z_norm(g_lp2, raw));
  }
  bool ok = true;
  double worst = 0.0;
  try {
    const SparseVector h = asq_witness(g_lp2, points, 0.01, 2000);
    for (const SparseVector& p : points) worst = std::max(worst, z_norm(g_lp2, p + h));
    ok = worst <= 1.01;
  } catch (const Error&) {
    ok = false;
  }
  const double dt = seconds_since(t0);
  ok = ok && dt < 1.0;
  report(6, ok, "almost-squareness witness",
         "max ||z_i + h|| = " + std::to_string(worst) + ", " + std::to_string(dt) + " s");
}

// 7. Slice-bound soundness: the analytic bound from the residual sup exceeds
//    the best empirical lower bound at budget 1e5, both below 2 - 0.05.
void criterion_7() {
  const double eps = 0.1;
  const double E = oracle::lp_section_residual(2.0, eps);
  const auto [C, bound] = usm_slice_bound(eps, E);
  const auto lb = slice_diameter_lb(g_lp2, make_slice(DualFunctional::unit(base_coord(1)), eps),
                                    16, 100000, 77001);
  const bool ok = lb.lower_bound <= bound && bound <= 2.0 - 0.05 && lb.lower_bound <= 2.0 - 0.05;
  report(7, ok, "slice-bound soundness",
         "bound " + std::to_string(bound) + ", lb " + std::to_string(lb.lower_bound) +
             ", budget used " + std::to_string(lb.budget_used));
}

// 8. Index-weighted gauge: slices stay wide (lb >= 1.9 at dim 200) while the
//    pair margin collapses (inconclusive with l - 1 < 1e-6 at dim 500).
void criterion_8() {
  const auto lb = slice_diameter_lb(g_nakano, make_slice(DualFunctional::unit(base_coord(1)), 0.1),
                                    200, 5000, 88001);
  const auto cert = certify_no_ld2p(g_nakano, base_coord(1), 500, 1e-6);
  const bool ok = lb.lower_bound >= 1.9 && !cert.conclusive() && (cert.l - 1.0) < 1e-6;
  report(8, ok, "wide slices with collapsing pair margin",
         "lb " + std::to_string(lb.lower_bound) + ", l - 1 = " + std::to_string(cert.l - 1.0));
}

// 9. Symmetric-route certificates for lp(1.5), lp(2), lp(4), and the weighted
//    rearrangement norm; every invariant re-checked from the JSON record.
void criterion_9() {
  struct Case {
    NormSpec spec;
    std::uint32_t dim;
    const char* name;
  };
  const std::vector<Case> cases = {{NormSpec::lp(1.5), 8, "lp(1.5)"},
                                   {NormSpec::lp(2.0), 16, "lp(2)"},
                                   {NormSpec::lp(4.0), 16, "lp(4)"},
                                   {NormSpec::day(), 8, "day"}};
  bool ok = true;
  std::string detail;
  for (const Case& c : cases) {
    try {
      const CertifyOutcome out = certify_no_ld2p_symmetric(c.spec, c.dim, 1e-9);
      if (!out.conclusive()) {
        ok = false;
        detail += std::string(c.name) + " inconclusive; ";
        continue;
      }
      const json j = *out.certificate;
      validate_certificate(j.get<Ld2pCertificate>());
      detail += std::string(c.name) + " bound " + std::to_string(j.at("diameter_bound").get<double>()) + "; ";
    } catch (const Error& e) {
      ok = false;
      detail += std::string(c.name) + " error: " + e.what() + "; ";
    }
  }
  report(9, ok, "symmetric-route certificates", detail);
}

// 10. The engine agrees with the pre-built brute-force bisection oracle on
//     10^3 random vectors, for both modulars, to 1e-10 relative.
void criterion_10() {
  SeededRng rng(1010);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    SparseVector v;
    const std::size_t k = 1 + rng.below(8);
    while (v.support_size() < k) {
      v = v.with(base_coord(1 + static_cast<std::uint32_t>(rng.below(12))),
                 rng.sign() * rng.uniform(0.05, 2.0));
    }
    const double n1 = eval_norm(g_nakano, v);
    const double o1 = oracle::gauge([&](double lam) { return nakano_eval(v / lam); });
    const double n2 = eval_norm(g_orlicz, v);
    const double o2 = oracle::gauge([&](double lam) { return orlicz_eval(v / lam); });
    worst = std::max({worst, std::fabs(n1 - o1) / o1, std::fabs(n2 - o2) / o2});
  }
  report(10, worst <= 1e-10, "oracle equivalence", "worst rel err " + std::to_string(worst));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criteria failed\n", g_failures);
  }
  return g_failures;
}
