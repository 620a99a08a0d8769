#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normlab/errors.hpp"
#include "normlab/norm.hpp"
#include "normlab/rng.hpp"
#include "normlab/sparse_vector.hpp"

namespace normlab {

// Slice S(f, eps) = {x in the unit ball : f(x) > 1 - eps}. Functionals are
// rescaled by the empirical max of pair(f, x) over the ball before eps is
// applied (dual norms of Luxemburg specs are not computed exactly); the
// rescale factor lands in the report.
struct SliceSpec {
  DualFunctional functional;
  double eps = 0.1;
};

inline SliceSpec make_slice(DualFunctional f, double eps) {
  if (f.empty()) throw DomainError("SliceSpec: functional must be nonzero");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("SliceSpec: eps must lie in (0,1)");
  return SliceSpec{std::move(f), eps};
}

struct DiameterReport {
  double lower_bound = 0.0;
  SparseVector witness_a;
  SparseVector witness_b;
  std::optional<double> upper_bound;  // supplied by a certificate, never by the probe
  std::uint64_t budget_used = 0;
  double functional_rescale = 1.0;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
};

struct UsmReport {
  Coordinate alpha;
  double eps = 0.0;
  double e_estimate = 0.0;
  SparseVector witness;
  std::uint32_t dim = 0;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
};

struct MonotonicityResult {
  bool pass = false;
  std::optional<std::pair<SparseVector, SparseVector>> counterexample;  // (u, v)
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

struct MidpointResult {
  std::optional<std::pair<SparseVector, SparseVector>> segment;  // (x, y) on the sphere
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  bool violation_found() const { return segment.has_value(); }
};

struct PhiStrictnessResult {
  bool pass = false;
  std::optional<std::pair<SparseVector, SparseVector>> witness;  // (z, w)
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

namespace detail {

inline double toward_one(double x) { return std::min(x + 1e-12, 1.0); }

inline SparseVector random_vector(SeededRng& rng, const std::vector<Coordinate>& coords,
                                  std::size_t max_support, double lo, double hi) {
  SparseVector v;
  if (coords.empty()) return v;
  const std::size_t k = 1 + rng.below(std::min<std::uint64_t>(max_support, coords.size()));
  for (std::size_t i = 0; i < k; ++i) {
    const Coordinate c = coords[rng.below(coords.size())];
    v = v.with(c, rng.sign() * rng.uniform(lo, hi));
  }
  return v;
}

inline SparseVector normalized(const NormSpec& spec, const SparseVector& v, double tol) {
  const double n = eval_norm(spec, v, tol);
  if (n == 0.0) throw DomainError("normalized: zero vector");
  return v / n;
}

inline SparseVector into_ball(const NormSpec& spec, const SparseVector& v, double tol) {
  const double n = eval_norm(spec, v, tol);
  return n > 1.0 ? v / n : v;
}

inline void require_witness(bool ok, const char* what) {
  if (!ok) throw Error("WitnessCheckFailed", what);
}

}  // namespace detail

// Lower bound on the diameter of a slice at truncation dim, by (a) a
// structured scan x0 +- r*e_c over coordinates off the support of a
// near-maximizer x0, normalized into the ball, and (b) seeded hill climbing
// on endpoint pairs. Deterministic given (seed, budget); the bound is
// non-decreasing in budget for a fixed seed.
inline DiameterReport slice_diameter_lb(const NormSpec& spec, const SliceSpec& slice,
                                        std::uint32_t dim, std::uint64_t budget,
                                        std::uint64_t seed, double tol = kDefaultTol) {
  if (dim < 2) throw DomainError("slice_diameter_lb: dim must be >= 2");
  if (budget < 1) throw DomainError("slice_diameter_lb: budget must be >= 1");
  if (!(slice.eps > 0.0 && slice.eps < 1.0)) throw DomainError("slice_diameter_lb: eps in (0,1)");

  const std::vector<Coordinate> coords = ambient_coordinates(spec, dim);
  const CoordinateSet ambient(coords.begin(), coords.end());
  const DualFunctional f = restrict_to(slice.functional, ambient);
  if (f.empty())
    throw EmptySliceSearchError("functional has no support inside the truncation");

  SeededRng rng(seed);

  // Empirical dual-norm estimate and near-maximizer of f over the ball.
  SparseVector x0;
  double dual_est = 0.0;
  const auto consider_point = [&](const SparseVector& cand) {
    if (cand.empty()) return;
    const SparseVector u = detail::normalized(spec, cand, tol);
    const double val = pair(f, u);
    if (val > dual_est) {
      dual_est = val;
      x0 = u;
    }
  };
  for (const auto& [c, fc] : f.entries())
    consider_point(SparseVector{{c, fc < 0 ? -1.0 : 1.0}});
  consider_point(as_vector(f));
  {
    SparseVector aligned;
    for (const auto& [c, fc] : f.entries()) aligned = aligned.with(c, fc < 0 ? -1.0 : 1.0);
    consider_point(aligned);
  }
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& [c, fc] : f.entries()) {
      for (const double step : {0.25, 0.1}) {
        consider_point(x0.with(c, x0.at(c) + (fc < 0 ? -step : step)));
      }
    }
  }
  if (!(dual_est > 0.0))
    throw EmptySliceSearchError("no ball point with positive functional value found");

  const double threshold = (1.0 - slice.eps) * dual_est;
  const auto in_slice = [&](const SparseVector& u) { return pair(f, u) > threshold; };

  double best = -1.0;
  SparseVector best_a, best_b;
  std::uint64_t used = 0;
  const auto consider_pair = [&](const SparseVector& a, const SparseVector& b) {
    ++used;
    if (!in_slice(a) || !in_slice(b)) return;
    const double d = eval_norm(spec, a - b, tol);
    if (d > best) {
      best = d;
      best_a = a;
      best_b = b;
    }
  };

  consider_pair(x0, x0);

  // Structured scan. Tail-of-ambient coordinates first (descending), where
  // index-weighted modulars flatten out; radii from flat-face scale down to
  // the eps-informed cap scale.
  std::vector<double> radii = {1.0, 0.99, 0.97, 0.95, 0.9, 0.8, 0.5};
  const double cap = std::sqrt(std::max(0.0, 1.0 - (1.0 - slice.eps) * (1.0 - slice.eps)));
  for (const double s : {1.0, 0.9, 0.75, 0.5}) {
    if (cap * s > 0.0 && cap * s < 1.0) radii.push_back(cap * s);
  }
  const CoordinateSet x0_support = x0.support();
  for (const double r : radii) {
    if (used >= budget) break;
    for (auto it = coords.rbegin(); it != coords.rend() && used < budget; ++it) {
      if (x0_support.contains(*it)) continue;
      const SparseVector bump = r * SparseVector::unit(*it);
      consider_pair(detail::into_ball(spec, x0 + bump, tol),
                    detail::into_ball(spec, x0 - bump, tol));
    }
  }

  // Hill climbing on pairs within the remaining budget.
  SparseVector cur_a = best >= 0.0 ? best_a : x0;
  SparseVector cur_b = best >= 0.0 ? best_b : x0;
  double cur = best >= 0.0 ? best : 0.0;
  const double scales[3] = {0.5, 0.15, 0.05};
  std::uint64_t iter = 0;
  while (used < budget) {
    const bool move_a = (iter % 2 == 0);
    const double s = scales[(iter / 2) % 3];
    ++iter;
    SparseVector delta = detail::random_vector(rng, coords, 3, 0.0, s);
    if (delta.empty()) {
      ++used;
      continue;
    }
    const SparseVector moved =
        detail::into_ball(spec, (move_a ? cur_a : cur_b) + delta, tol);
    const SparseVector& other = move_a ? cur_b : cur_a;
    ++used;
    if (!in_slice(moved) || !in_slice(other)) continue;
    const double d = eval_norm(spec, moved - other, tol);
    if (d > cur) {
      cur = d;
      (move_a ? cur_a : cur_b) = moved;
      if (d > best) {
        best = d;
        best_a = cur_a;
        best_b = cur_b;
      }
    }
  }

  if (best < 0.0)
    throw EmptySliceSearchError("no feasible slice pair found within budget");

  // Reports are self-certifying: re-validate the witnesses at 10*tol.
  detail::require_witness(eval_norm(spec, best_a, tol) <= 1.0 + 10 * tol &&
                              eval_norm(spec, best_b, tol) <= 1.0 + 10 * tol,
                          "slice witnesses leave the ball");
  detail::require_witness(in_slice(best_a) && in_slice(best_b),
                          "slice witnesses leave the slice");

  DiameterReport rep;
  rep.lower_bound = best;
  rep.witness_a = best_a;
  rep.witness_b = best_b;
  rep.budget_used = used;
  rep.functional_rescale = dual_est;
  rep.seed = seed;
  rep.tol = tol;
  return rep;
}

// Lower estimate of E_alpha(eps) = sup{||x - x(alpha) e_alpha|| : x unit,
// x(alpha) > 1 - eps} at truncation dim. The alpha-coordinate runs over a
// grid in (1 - eps, 1]; along each direction u off alpha the largest feasible
// t with ||c e_alpha + t u|| <= 1 is found by bisection (valid for lattice
// norms: the section is even and non-decreasing). Directions: unit vectors,
// normalized prefix indicators, and `budget` seeded random directions.
inline UsmReport usm_residual_probe(const NormSpec& spec, Coordinate alpha, double eps,
                                    std::uint32_t dim, std::uint64_t budget,
                                    std::uint64_t seed, double tol = kDefaultTol) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("usm_residual_probe: eps in (0,1)");
  if (dim < 2) throw DomainError("usm_residual_probe: dim must be >= 2");

  const std::vector<Coordinate> coords = ambient_coordinates(spec, dim);
  std::vector<Coordinate> off;
  off.reserve(coords.size());
  bool alpha_in_ambient = false;
  for (const Coordinate& c : coords) {
    if (c == alpha) {
      alpha_in_ambient = true;
    } else {
      off.push_back(c);
    }
  }
  if (!alpha_in_ambient) throw DomainError("usm_residual_probe: alpha outside the truncation");

  std::vector<double> grid;
  grid.push_back(detail::toward_one(1.0 - eps));
  for (int j = 7; j >= 0; --j) grid.push_back(1.0 - eps * j / 8.0);

  std::vector<SparseVector> directions;
  for (const Coordinate& c : off) directions.push_back(SparseVector::unit(c));
  for (std::size_t m = 1; m < off.size(); m *= 2) {
    CoordinateSet a(off.begin(), off.begin() + m);
    directions.push_back(indicator(a));
  }
  directions.push_back(indicator(CoordinateSet(off.begin(), off.end())));
  SeededRng rng(seed);
  for (std::uint64_t i = 0; i < budget; ++i) {
    SparseVector u = detail::random_vector(rng, off, 10, 0.05, 1.0);
    if (!u.empty()) directions.push_back(u);
  }

  double best = 0.0;
  SparseVector witness;
  const SparseVector ealpha = SparseVector::unit(alpha);
  for (const SparseVector& raw : directions) {
    const SparseVector u = detail::normalized(spec, raw, tol);
    for (const double c : grid) {
      const auto g = [&](double t) { return eval_norm(spec, c * ealpha + t * u, tol); };
      double t_lo = 0.0, t_hi = 1.0;
      if (g(t_hi) <= 1.0) {
        t_lo = t_hi;
        int guard = 0;
        while (g(t_hi) <= 1.0) {
          t_lo = t_hi;
          t_hi *= 2.0;
          if (++guard > 60) throw NonBracketableError("usm_residual_probe: section never exits the ball");
        }
      }
      while (t_hi - t_lo > tol * std::max(t_lo, 1e-6)) {
        const double mid = 0.5 * (t_lo + t_hi);
        if (g(mid) <= 1.0) t_lo = mid; else t_hi = mid;
      }
      if (t_lo <= 0.0) continue;
      const SparseVector x = c * ealpha + t_lo * u;
      const double resid = eval_norm(spec, x - c * ealpha, tol);
      if (resid > best) {
        best = resid;
        witness = x;
      }
    }
  }

  detail::require_witness(best <= 2.0 + 1e-9, "residual above the sanity ceiling 2");
  if (!witness.empty()) {
    detail::require_witness(std::fabs(eval_norm(spec, witness, tol) - 1.0) <= 10 * tol,
                            "usm witness off the unit sphere");
    detail::require_witness(witness.at(alpha) > 1.0 - eps, "usm witness outside the slice");
    detail::require_witness(
        std::fabs(eval_norm(spec, witness - witness.at(alpha) * ealpha, tol) - best) <= 10 * tol,
        "usm witness residual mismatch");
  }

  UsmReport rep;
  rep.alpha = alpha;
  rep.eps = eps;
  rep.e_estimate = best;
  rep.witness = witness;
  rep.dim = dim;
  rep.seed = seed;
  rep.tol = tol;
  return rep;
}

// Samples pairs with |u| < |v| (strict somewhere) and checks ||u|| < ||v||.
// The sampler stays at low indices with entries bounded below (values within
// a factor ~4.5 of the sup), so for the index-weighted modulars the smallest
// genuine norm gap stays orders of magnitude above the 1e-12 margin.
inline MonotonicityResult strict_monotonicity_probe(const NormSpec& spec, std::uint64_t trials,
                                                    std::uint64_t seed, double tol = kDefaultTol) {
  if (trials < 1) throw DomainError("strict_monotonicity_probe: trials must be >= 1");
  const std::vector<Coordinate> coords = ambient_coordinates(spec, 6);
  SeededRng rng(seed);
  MonotonicityResult res;
  res.trials = trials;
  res.seed = seed;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SparseVector v;
    const std::size_t k = 2 + rng.below(5);
    while (v.support_size() < k) {
      v = v.with(coords[rng.below(coords.size())], rng.sign() * rng.uniform(0.45, 2.0));
    }
    SparseVector u = v;
    const auto entries = v.entries();
    std::size_t shrunk = 0;
    for (const auto& [c, val] : entries) {
      if (shrunk > 0 && rng.uniform01() < 0.5) continue;
      u = u.with(c, val * rng.uniform(0.2, 0.8));
      ++shrunk;
    }
    if (!(eval_norm(spec, u, tol) < eval_norm(spec, v, tol) - 1e-12)) {
      res.counterexample = {u, v};
      res.trials = t + 1;
      return res;
    }
  }
  res.pass = true;
  return res;
}

// Searches for two distinct unit vectors whose midpoint stays on the sphere
// (a flat face). A probe, not a proof: NoViolationFound is evidence only.
inline MidpointResult midpoint_sc_probe(const NormSpec& spec, std::uint64_t trials,
                                        std::uint64_t seed, double tol = kDefaultTol) {
  if (trials < 1) throw DomainError("midpoint_sc_probe: trials must be >= 1");
  const std::vector<Coordinate> coords = ambient_coordinates(spec, 8);
  SeededRng rng(seed);
  MidpointResult res;
  res.seed = seed;

  const auto check = [&](const SparseVector& xr, const SparseVector& yr) -> bool {
    if (xr.empty() || yr.empty()) return false;
    const SparseVector x = detail::normalized(spec, xr, tol);
    const SparseVector y = detail::normalized(spec, yr, tol);
    if (eval_norm(spec, x - y, tol) <= 1e-8) return false;
    if (eval_norm(spec, 0.5 * (x + y), tol) >= 1.0 - 1e-10) {
      res.segment = {x, y};
      return true;
    }
    return false;
  };

  const std::size_t m = std::min<std::size_t>(coords.size(), 4);
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < m && !res.segment; ++i) {
    for (std::size_t j = i + 1; j < m && !res.segment; ++j) {
      const SparseVector a = SparseVector::unit(coords[i]);
      const SparseVector b = SparseVector::unit(coords[j]);
      ++t;
      if (check(a + b, a - b)) break;
      ++t;
      if (check(a, b)) break;
      ++t;
      if (check(a + b, a)) break;
    }
  }
  while (!res.segment && t < trials) {
    ++t;
    check(detail::random_vector(rng, coords, 4, 0.2, 1.5),
          detail::random_vector(rng, coords, 4, 0.2, 1.5));
  }
  res.trials = t;
  return res;
}

// Strictness of the direct-sum modular: (Phi(z+w) + Phi(z-w))/2 > Phi(z) for
// w != 0, at the scale-aware threshold 1e-14 * sup(w)^2. The base's own
// midpoint probe runs first: a found segment (x, y) converts directly into a
// witness ((x+y)/2, (x-y)/2); base-only pairs are gap-checked only past that
// gate. Random pairs carry a low-index Tail component in w, whose even-power
// bracket bounds the gap away from zero.
inline PhiStrictnessResult phi_strictness_probe(const NormSpec& base, std::uint64_t trials,
                                                std::uint64_t seed, double tol = kDefaultTol) {
  if (trials < 1) throw DomainError("phi_strictness_probe: trials must be >= 1");
  if (base.is_z_norm()) throw DomainError("phi_strictness_probe: base must live on the Base sector");

  PhiStrictnessResult res;
  res.seed = seed;
  SeededRng rng(seed);

  const auto gap_of = [&](const SparseVector& z, const SparseVector& w) {
    return 0.5 * (phi_sum_eval(z + w, base, tol) + phi_sum_eval(z - w, base, tol)) -
           phi_sum_eval(z, base, tol);
  };
  const auto violates = [&](const SparseVector& z, const SparseVector& w) {
    const double s = sup_norm(w);
    return gap_of(z, w) <= 1e-14 * s * s;
  };

  const std::uint64_t mp_budget = std::min<std::uint64_t>(trials, 2000);
  const MidpointResult mp = midpoint_sc_probe(base, mp_budget, rng.fork(1).seed(), tol);
  res.trials = mp.trials;
  if (mp.segment) {
    const auto& [x, y] = *mp.segment;
    const SparseVector z = 0.5 * (x + y);
    const SparseVector w = 0.5 * (x - y);
    if (!w.empty() && violates(z, w)) {
      res.witness = {z, w};
      return res;
    }
  }

  // Designed base-only flat-face patterns; harmless when the base really is
  // strictly convex.
  const struct { std::uint32_t j, a, b; } designed[] = {{3, 1, 2}, {4, 1, 2}, {1, 2, 3}, {4, 2, 3}};
  for (const auto& d : designed) {
    ++res.trials;
    const SparseVector z = SparseVector::unit(base_coord(d.j));
    const SparseVector w =
        0.5 * (SparseVector::unit(base_coord(d.a)) - SparseVector::unit(base_coord(d.b)));
    if (violates(z, w)) {
      res.witness = {z, w};
      return res;
    }
  }

  std::vector<Coordinate> base_coords, tail_coords;
  for (std::uint32_t i = 1; i <= 8; ++i) {
    base_coords.push_back(base_coord(i));
    tail_coords.push_back(tail_coord(i));
  }
  for (std::uint64_t t = res.trials; t < trials; ++t) {
    SparseVector z = detail::random_vector(rng, base_coords, 4, 0.0, 1.2) +
                     detail::random_vector(rng, tail_coords, 4, 0.0, 0.9);
    SparseVector w = detail::random_vector(rng, base_coords, 3, 0.05, 1.0);
    w = w.with(tail_coord(1 + rng.below(2)), rng.sign() * rng.uniform(0.05, 1.0));
    w = w + detail::random_vector(rng, tail_coords, 2, 0.0, 0.9);
    ++res.trials;
    if (w.empty()) continue;
    if (violates(z, w)) {
      res.witness = {z, w};
      return res;
    }
  }
  res.pass = true;
  return res;
}

// Constructive almost-squareness witness for the z-norm: h = (0, r e_N)
// normalized, with N past every point's Tail support and r^{2N} < eps/2, so
// that ||z_i + h|| <= 1 + eps for every point. dim caps the Tail index N.
inline SparseVector asq_witness(const NormSpec& base, const std::vector<SparseVector>& points,
                                double eps, std::uint32_t dim, double tol = kDefaultTol) {
  if (base.is_z_norm()) throw DomainError("asq_witness: base must live on the Base sector");
  if (!(eps > 0.0)) throw DomainError("asq_witness: eps must be positive");
  std::uint32_t max_tail = 0;
  for (const SparseVector& p : points) {
    if (z_norm(base, p, tol) > 1.0 + 100 * tol)
      throw DomainError("asq_witness: point outside the unit ball");
    for (const auto& [c, v] : p.entries())
      if (c.sector == Sector::Tail) max_tail = std::max(max_tail, c.index);
  }

  const double r = 1.0 - std::min(eps, 2.0) / 4.0;
  const double half = eps / 2.0;
  std::uint32_t n = max_tail + 1;
  if (half < 1.0) {
    const double needed = std::log(half) / (2.0 * std::log(r));
    if (needed > static_cast<double>(n))
      n = static_cast<std::uint32_t>(std::min(needed + 1.0, 4.0e9));
    while (std::pow(r, 2.0 * n) >= half) {
      if (n > dim) break;
      ++n;
    }
  }
  if (n > dim)
    throw BudgetExceededError(
        "asq_witness: no Tail index within dim satisfies the modular-increment bound; raise dim");

  const SparseVector g = r * SparseVector::unit(tail_coord(n));
  const SparseVector h = g / z_norm(base, g, tol);

  detail::require_witness(std::fabs(z_norm(base, h, tol) - 1.0) <= 10 * tol,
                          "asq witness off the unit sphere");
  for (const SparseVector& p : points) {
    detail::require_witness(z_norm(base, p + h, tol) <= 1.0 + eps,
                            "asq witness fails the almost-square bound");
  }
  return h;
}

}  // namespace normlab
