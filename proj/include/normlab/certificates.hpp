#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normlab/errors.hpp"
#include "normlab/norm.hpp"
#include "normlab/probes.hpp"
#include "normlab/rng.hpp"

namespace normlab {

// Constructive no-LD2P certificate at a finite truncation. The constant chain
// runs K -> l -> eta -> theta -> a_frak -> eps -> E_bound -> diameter_bound
// with every inequality strict; truncation_dim records that the statement is
// about the truncated space (plus the monotone-in-dim trend), nothing more.
struct Ld2pCertificate {
  Coordinate alpha;
  double K = 0.0;        // lattice constant ||1_[dim]||
  double l = 0.0;        // min over beta of ||e_alpha + e_beta / K||
  double eta = 0.0;
  double theta = 0.0;
  double a_frak = 0.0;   // theta / K
  double eps = 0.0;
  double e_bound = 0.0;  // upper bound on E_alpha(eps)
  double diameter_bound = 0.0;
  std::uint32_t truncation_dim = 0;
  std::uint64_t probe_seed = 0;
  std::uint64_t probe_trials = 0;
  double tol = kDefaultTol;
};

struct CertifyOutcome {
  std::optional<Ld2pCertificate> certificate;
  std::string reason;  // set when inconclusive
  double K = std::numeric_limits<double>::quiet_NaN();
  double l = std::numeric_limits<double>::quiet_NaN();
  bool conclusive() const { return certificate.has_value(); }
};

// C = (1 - 3 eps / 2)(1 - E) and the slice-diameter bound 2(1 - C).
inline std::pair<double, double> usm_slice_bound(double eps, double E) {
  if (!(eps > 0.0 && eps < 2.0 / 3.0)) throw DomainError("usm_slice_bound: eps in (0, 2/3)");
  if (!(E >= 0.0 && E < 1.0)) throw DomainError("usm_slice_bound: E in [0, 1)");
  const double C = (1.0 - 1.5 * eps) * (1.0 - E);
  return {C, 2.0 * (1.0 - C)};
}

struct UsmConstants {
  double eta = 0.0;
  double theta = 0.0;
  double a_frak = 0.0;
  double eps = 0.0;
};

inline double usm_affine(double tau, double eta, double l, double K) {
  return tau * eta * l - (1.0 - tau) * eta - (1.0 - eta) * tau / K;
}

// eta is the midpoint of its admissible window ((K+1)/(lK+1), 1); theta is
// the smallest point of a 1e-4-step descending grid from 1 with
// f(theta) > 1 + 1e-9 (f is affine increasing in tau, and the window
// guarantees f(1) > 1); eps halves the analytic ceiling so both strict
// inequalities survive solver tolerance.
inline UsmConstants derive_usm_constants(double K, double l) {
  if (!(K > 1.0)) throw DomainError("derive_usm_constants: requires K > 1");
  if (!(l > 1.0 && l <= 2.0 + 1e-9)) throw DomainError("derive_usm_constants: requires 1 < l <= 2");

  const double window_lo = (K + 1.0) / (l * K + 1.0);
  const double eta = 0.5 * (window_lo + 1.0);
  if (!(usm_affine(1.0, eta, l, K) > 1.0 + 1e-9))
    throw DomainError("derive_usm_constants: f(1) margin below 1e-9; l too close to 1");

  constexpr double step = 1e-4;
  double theta = 1.0;
  for (int j = 1; j < 10000; ++j) {
    const double tau = 1.0 - j * step;
    if (!(usm_affine(tau, eta, l, K) > 1.0 + 1e-9)) break;
    theta = tau;
  }
  if (theta >= 1.0)
    throw DomainError("derive_usm_constants: theta scan margin below one grid step; l too close to 1");

  UsmConstants cc;
  cc.eta = eta;
  cc.theta = theta;
  cc.a_frak = theta / K;
  cc.eps = 0.5 * std::min({1.0 - eta, (1.0 - theta) / 2.0, 2.0 / 3.0 - 1e-9});
  return cc;
}

// Re-assert every certificate invariant from the record alone.
inline void validate_certificate(const Ld2pCertificate& c) {
  const auto fail = [](const std::string& what) {
    throw DomainError("certificate invariant violated: " + what);
  };
  if (!(c.K > 1.0)) fail("K > 1");
  if (!(c.l > 1.0)) fail("l > 1");
  if (!(c.l <= 2.0 + 1e-9)) fail("l <= 2");
  const double window_lo = (c.K + 1.0) / (c.l * c.K + 1.0);
  if (!(c.eta > window_lo && c.eta < 1.0)) fail("eta inside ((K+1)/(lK+1), 1)");
  if (!(usm_affine(c.theta, c.eta, c.l, c.K) > 1.0)) fail("f(theta) > 1");
  if (!(std::fabs(c.a_frak * c.K - c.theta) <= 1e-12)) fail("a_frak = theta / K");
  if (!(c.a_frak * c.K < 1.0 - 2.0 * c.eps)) fail("a_frak * K < 1 - 2 eps");
  if (!(c.eps > 0.0 && c.eps < 1.0 - c.eta && c.eps < 2.0 / 3.0)) fail("eps < min(1 - eta, 2/3)");
  if (!(c.e_bound <= 1.0 - c.eps)) fail("E_bound <= 1 - eps");
  const auto [C, bound] = usm_slice_bound(c.eps, c.e_bound);
  if (!(C > 0.0)) fail("C > 0");
  if (!(std::fabs(c.diameter_bound - bound) <= 1e-12)) fail("diameter_bound = 2(1 - C)");
  if (!(c.diameter_bound < 2.0)) fail("diameter_bound < 2");
}

namespace detail {

inline CertifyOutcome inconclusive(std::string reason, double K, double l) {
  CertifyOutcome out;
  out.reason = std::move(reason);
  out.K = K;
  out.l = l;
  return out;
}

// Shared chain: normalized-basis check, strict-monotonicity probe, lattice
// constant K, pair minimum l, then the constant chain. `tol` is the decision
// margin (l and K must clear 1 by more than tol); solves run at the engine
// default precision so a coarse margin does not degrade the values.
inline CertifyOutcome certify_impl(const NormSpec& spec, Coordinate alpha, std::uint32_t dim,
                                   double tol, bool single_pair_by_symmetry,
                                   std::uint64_t probe_trials, std::uint64_t seed) {
  if (dim < 2) throw DomainError("certify: dim must be >= 2");
  if (alpha.sector != Sector::Base || alpha.index == 0 || alpha.index > dim)
    throw DomainError("certify: alpha must be a Base coordinate within the truncation");
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  for (std::uint32_t i : {alpha.index, alpha.index % dim + 1}) {
    if (std::fabs(eval_norm(spec, SparseVector::unit(base_coord(i))) - 1.0) > 1e-9)
      return inconclusive("basis not normalized", nan, nan);
  }

  const MonotonicityResult mono = strict_monotonicity_probe(spec, probe_trials, seed);
  if (!mono.pass) return inconclusive("strict monotonicity probe failed", nan, nan);

  const double K = indicator_norm(spec, dim);
  if (!(K > 1.0 + tol))
    return inconclusive("lattice constant K <= 1 + tol at this truncation", K, nan);

  const SparseVector ealpha = SparseVector::unit(alpha);
  double l = std::numeric_limits<double>::infinity();
  for (std::uint32_t beta = 1; beta <= dim; ++beta) {
    if (beta == alpha.index) continue;
    l = std::min(l, eval_norm(spec, ealpha + (1.0 / K) * SparseVector::unit(base_coord(beta))));
    if (single_pair_by_symmetry) break;
  }
  if (!(l > 1.0 + tol))
    return inconclusive("l <= 1 + tol at this truncation", K, l);

  UsmConstants cc;
  try {
    cc = derive_usm_constants(K, l);
  } catch (const DomainError& e) {
    return inconclusive(e.what(), K, l);
  }

  Ld2pCertificate cert;
  cert.alpha = alpha;
  cert.K = K;
  cert.l = l;
  cert.eta = cc.eta;
  cert.theta = cc.theta;
  cert.a_frak = cc.a_frak;
  cert.eps = cc.eps;
  cert.e_bound = 1.0 - cc.eps;
  cert.diameter_bound = usm_slice_bound(cc.eps, cert.e_bound).second;
  cert.truncation_dim = dim;
  cert.probe_seed = seed;
  cert.probe_trials = probe_trials;
  cert.tol = kDefaultTol;
  validate_certificate(cert);

  CertifyOutcome out;
  out.certificate = cert;
  out.K = K;
  out.l = l;
  return out;
}

}  // namespace detail

inline CertifyOutcome certify_no_ld2p(const NormSpec& spec, Coordinate alpha, std::uint32_t dim,
                                      double tol = kDefaultTol, std::uint64_t probe_trials = 2000,
                                      std::uint64_t seed = 0x6e6f726d6c6162ULL) {
  return detail::certify_impl(spec, alpha, dim, tol, /*single_pair_by_symmetry=*/false,
                              probe_trials, seed);
}

// Variant with K read as the norm of the all-ones vector over the whole
// truncation (the finite stand-in for a lattice copy of l_infinity).
inline CertifyOutcome certify_no_ld2p_linfty(const NormSpec& spec, Coordinate k, std::uint32_t dim,
                                             double tol = kDefaultTol,
                                             std::uint64_t probe_trials = 2000,
                                             std::uint64_t seed = 0x6e6f726d6c6162ULL) {
  return detail::certify_impl(spec, k, dim, tol, /*single_pair_by_symmetry=*/false,
                              probe_trials, seed);
}

// For 1-symmetric norms a single pair determines l. Symmetry is checked by
// sampling coordinate permutations before trusting the shortcut.
inline CertifyOutcome certify_no_ld2p_symmetric(const NormSpec& spec, std::uint32_t dim,
                                                double tol = kDefaultTol,
                                                std::uint64_t probe_trials = 2000,
                                                std::uint64_t seed = 0x6e6f726d6c6162ULL) {
  if (dim < 2) throw DomainError("certify: dim must be >= 2");
  SeededRng rng(SeededRng(seed).fork(7).seed());
  for (int trial = 0; trial < 32; ++trial) {
    SparseVector v;
    const std::size_t k = 2 + rng.below(std::min<std::uint64_t>(5, dim - 1));
    while (v.support_size() < k) {
      v = v.with(base_coord(1 + static_cast<std::uint32_t>(rng.below(dim))),
                 rng.sign() * rng.uniform(0.1, 1.5));
    }
    std::vector<std::uint32_t> perm(dim);
    for (std::uint32_t i = 0; i < dim; ++i) perm[i] = i + 1;
    for (std::uint32_t i = dim - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.below(i + 1)]);
    SparseVector pv;
    for (const auto& [c, val] : v.entries()) pv = pv.with(base_coord(perm[c.index - 1]), val);
    const double n1 = eval_norm(spec, v);
    const double n2 = eval_norm(spec, pv);
    // 1e-12 symmetry margin, widened by the solver tolerance of two solves.
    if (std::fabs(n1 - n2) > 1e-12 + 4.0 * kDefaultTol * std::max(1.0, n1))
      throw SymmetryViolationError("norm not invariant under coordinate permutations");
  }
  return detail::certify_impl(spec, base_coord(1), dim, tol, /*single_pair_by_symmetry=*/true,
                              probe_trials, seed);
}

// Closed forms for the piecewise-exponential Orlicz space.
// ||1_[n]|| = 2 - 2 ln 2 + ln n for n >= 4 (exponential branch of M).
inline double orlicz_indicator_norm(std::uint64_t n) {
  if (n < 4) throw DomainError("orlicz_indicator_norm: requires n >= 4");
  return 2.0 - 2.0 * std::log(2.0) + std::log(static_cast<double>(n));
}

struct OrliczResidual {
  double k = 0.0;         // off-coordinate entries are 1/k
  double residual = 0.0;  // ||x_n - x_n(1) e_1||
};

// Residual norm of the unit vector (1-d) e_1 + (1/k) (e_2 + ... + e_{n+1}),
// with k chosen so the modular equals 1. Increasing in n with limit 1.
inline OrliczResidual orlicz_near_unit_residual(double d, std::uint64_t n) {
  if (!(d > 0.0 && d < 0.5)) throw DomainError("orlicz_near_unit_residual: d in (0, 1/2)");
  if (n < 4) throw DomainError("orlicz_near_unit_residual: requires n >= 4");
  const double s = 2.0 - 2.0 * std::log(2.0) + std::log(static_cast<double>(n));
  const double k = s - std::log(2.0 * d - d * d);
  if (!(1.0 / k < 0.5))
    throw DomainError("orlicz_near_unit_residual: 1/k must fall in the exponential branch");
  OrliczResidual out;
  out.k = k;
  out.residual = s / k;
  if (!(out.residual > 0.0 && out.residual < 1.0))
    throw DomainError("orlicz_near_unit_residual: residual outside (0, 1)");
  return out;
}

inline SparseVector orlicz_near_unit_vector(double d, std::uint64_t n) {
  const OrliczResidual r = orlicz_near_unit_residual(d, n);
  std::vector<std::pair<Coordinate, double>> entries;
  entries.reserve(n + 1);
  entries.emplace_back(base_coord(1), 1.0 - d);
  for (std::uint64_t i = 1; i <= n; ++i)
    entries.emplace_back(base_coord(static_cast<std::uint32_t>(i + 1)), 1.0 / r.k);
  return SparseVector(entries);
}

}  // namespace normlab
