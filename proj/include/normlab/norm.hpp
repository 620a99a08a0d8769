#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "normlab/errors.hpp"
#include "normlab/modular.hpp"
#include "normlab/sparse_vector.hpp"

namespace normlab {

inline constexpr double kDefaultTol = 1e-12;

class NormSpec;

// Convex, symmetric, coordinatewise-monotone functional whose Luxemburg gauge
// defines a norm. PhiSum is the direct-sum modular ||x||_base + nakano(y):
// base norm of the Base-sector part plus the index-weighted powers of the
// Tail-sector part.
class Modular {
 public:
  enum class Kind { Nakano, OrliczM, PhiSum };

  static Modular nakano() { return Modular(Kind::Nakano, nullptr); }
  static Modular orlicz() { return Modular(Kind::OrliczM, nullptr); }
  static Modular phi_sum(NormSpec base);

  Kind kind() const { return kind_; }
  const NormSpec& base() const {
    if (!base_) throw DomainError("Modular: no base norm (not a phi-sum)");
    return *base_;
  }

  double eval(const SparseVector& v, double tol = kDefaultTol) const;

  std::string name() const {
    switch (kind_) {
      case Kind::Nakano: return "nakano";
      case Kind::OrliczM: return "orlicz-m";
      case Kind::PhiSum: return "phi-sum";
    }
    return "?";
  }

 private:
  Modular(Kind k, std::shared_ptr<const NormSpec> b) : kind_(k), base_(std::move(b)) {}

  Kind kind_;
  std::shared_ptr<const NormSpec> base_;
};

// Closed norm description: explicit formulas (Sup, L1, Lp, Day) or the
// Luxemburg gauge of a modular. The z-norm is Luxemburg(PhiSum(base)).
class NormSpec {
 public:
  enum class Kind { Sup, L1, Lp, Day, Luxemburg };

  static NormSpec sup() { return NormSpec(Kind::Sup); }
  static NormSpec l1() { return NormSpec(Kind::L1); }
  static NormSpec lp(double p) {
    if (!(p > 1.0)) throw DomainError("NormSpec::lp: requires p > 1");
    NormSpec s(Kind::Lp);
    s.p_ = p;
    return s;
  }
  static NormSpec day() { return NormSpec(Kind::Day); }
  static NormSpec luxemburg(Modular m) {
    NormSpec s(Kind::Luxemburg);
    s.modular_ = std::make_shared<Modular>(std::move(m));
    return s;
  }
  static NormSpec z(NormSpec base) { return luxemburg(Modular::phi_sum(std::move(base))); }

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  const Modular& modular() const {
    if (!modular_) throw DomainError("NormSpec: not a Luxemburg norm");
    return *modular_;
  }
  bool is_z_norm() const {
    return kind_ == Kind::Luxemburg && modular_->kind() == Modular::Kind::PhiSum;
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::Sup: return "sup";
      case Kind::L1: return "l1";
      case Kind::Lp: return "lp(" + std::to_string(p_) + ")";
      case Kind::Day: return "day";
      case Kind::Luxemburg:
        if (is_z_norm()) return "z[" + modular_->base().describe() + "]";
        return "luxemburg[" + modular_->name() + "]";
    }
    return "?";
  }

 private:
  explicit NormSpec(Kind k) : kind_(k) {}

  Kind kind_;
  double p_ = 0.0;
  std::shared_ptr<const Modular> modular_;
};

inline Modular Modular::phi_sum(NormSpec base) {
  return Modular(Kind::PhiSum, std::make_shared<const NormSpec>(std::move(base)));
}

inline double eval_norm(const NormSpec& spec, const SparseVector& v, double tol);

inline double phi_sum_eval(const SparseVector& z, const NormSpec& base,
                           double tol = kDefaultTol) {
  const SparseVector x = restrict_to(z, Sector::Base);
  const SparseVector y = restrict_to(z, Sector::Tail);
  return eval_norm(base, x, tol) + nakano_eval(y);
}

inline double Modular::eval(const SparseVector& v, double tol) const {
  switch (kind_) {
    case Kind::Nakano: return nakano_eval(v);
    case Kind::OrliczM: return orlicz_eval(v);
    case Kind::PhiSum: return phi_sum_eval(v, *base_, tol);
  }
  return 0.0;
}

namespace detail {

// h(lambda) = m(v / lambda) without materializing scaled vectors. Norms are
// homogeneous, so the direct-sum base norm is computed once up front.
class GaugeObjective {
 public:
  GaugeObjective(const Modular& m, const SparseVector& v, double tol) {
    const auto add_power_term = [this](Coordinate c, double val) {
      if (c.index == 0)
        throw DomainError("nakano_eval: coordinate index 0 (indices are 1-based)");
      power_terms_.emplace_back(std::fabs(val), 2.0 * static_cast<double>(c.index));
    };
    switch (m.kind()) {
      case Modular::Kind::Nakano:
        for (const auto& [c, val] : v.entries()) add_power_term(c, val);
        break;
      case Modular::Kind::OrliczM:
        for (const auto& [c, val] : v.entries()) orlicz_mags_.push_back(std::fabs(val));
        break;
      case Modular::Kind::PhiSum:
        base_norm_ = eval_norm(m.base(), restrict_to(v, Sector::Base), tol);
        for (const auto& [c, val] : v.entries())
          if (c.sector == Sector::Tail) add_power_term(c, val);
        break;
    }
  }

  double operator()(double lambda) const {
    double acc = base_norm_ / lambda;
    for (const auto& [mag, expo] : power_terms_) acc += std::pow(mag / lambda, expo);
    for (const double mag : orlicz_mags_) acc += orlicz_m(mag / lambda);
    return acc;
  }

 private:
  double base_norm_ = 0.0;
  std::vector<std::pair<double, double>> power_terms_;  // (magnitude, exponent)
  std::vector<double> orlicz_mags_;
};

}  // namespace detail

// Luxemburg gauge inf{lambda > 0 : m(v/lambda) <= 1}. h(lambda) = m(v/lambda)
// is continuous and strictly decreasing for the in-scope modulars, so a
// monotone bracket-and-bisect solve suffices: h(sup_norm(v)) >= 1 for every
// lattice-normalized modular, doubling reaches h <= 1 at latest near the
// l1 norm. Bisection runs to relative width tol; at the solution
// m(v/lambda) = 1.
inline double luxemburg(const Modular& m, const SparseVector& v, double tol = kDefaultTol) {
  if (v.empty()) throw ZeroVectorError();
  if (!(tol > 0.0)) throw DomainError("luxemburg: tol must be positive");

  const detail::GaugeObjective h(m, v, tol);

  double lo = sup_norm(v);
  double hi = lo;
  int guard = 0;
  while (h(hi) > 1.0) {
    hi *= 2.0;
    if (++guard > 300) throw NonBracketableError("luxemburg: modular never drops to <= 1");
  }
  guard = 0;
  while (h(lo) < 1.0) {
    lo *= 0.5;
    if (++guard > 1100) throw NonBracketableError("luxemburg: modular never rises to >= 1");
  }
  while (hi - lo > tol * lo) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) <= 1.0) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

namespace detail {

inline double day_norm(const SparseVector& v) {
  std::vector<double> mags;
  mags.reserve(v.support_size());
  for (const auto& [c, val] : v.entries()) mags.push_back(std::fabs(val));
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double acc = 0.0;
  double w = 0.25;
  for (const double a : mags) {
    acc += w * a * a;
    w *= 0.25;
  }
  // Factor 2 makes basis vectors norm-one under the 4^{-k} weights.
  return 2.0 * std::sqrt(acc);
}

inline double lp_pow_norm(const SparseVector& v, double p) {
  double acc = 0.0;
  for (const auto& [c, val] : v.entries()) acc += std::pow(std::fabs(val), p);
  return std::pow(acc, 1.0 / p);
}

}  // namespace detail

inline double eval_norm(const NormSpec& spec, const SparseVector& v,
                        double tol = kDefaultTol) {
  if (v.empty()) return 0.0;
  switch (spec.kind()) {
    case NormSpec::Kind::Sup: return sup_norm(v);
    case NormSpec::Kind::L1: return l1_norm(v);
    case NormSpec::Kind::Lp: return detail::lp_pow_norm(v, spec.p());
    case NormSpec::Kind::Day: return detail::day_norm(v);
    case NormSpec::Kind::Luxemburg: return luxemburg(spec.modular(), v, tol);
  }
  return 0.0;
}

inline double z_norm(const NormSpec& base, const SparseVector& z, double tol = kDefaultTol) {
  if (z.empty()) return 0.0;
  return luxemburg(Modular::phi_sum(base), z, tol);
}

// The direct-sum max norm max(||x||_base, ||y||_inf); the z-norm satisfies
// z_infty <= z_norm <= 2 * z_infty.
inline double z_infty_norm(const NormSpec& base, const SparseVector& z,
                           double tol = kDefaultTol) {
  const SparseVector x = restrict_to(z, Sector::Base);
  const SparseVector y = restrict_to(z, Sector::Tail);
  return std::max(eval_norm(base, x, tol), sup_norm(y));
}

// ||1_{[n]}|| on the Base sector: the truncation-level value of the lattice
// constant (supremum over finite indicators); non-decreasing in n.
inline double indicator_norm(const NormSpec& spec, std::uint32_t n,
                             double tol = kDefaultTol) {
  if (n == 0) throw DomainError("indicator_norm: n must be >= 1");
  return eval_norm(spec, ones(n), tol);
}

// m(z/lambda) <= m(z)/lambda + 1e-12, expected to hold for lambda > 1.
inline bool scale_check(const Modular& m, const SparseVector& z, double lambda,
                        double tol = kDefaultTol) {
  return m.eval(z / lambda, tol) <= m.eval(z, tol) / lambda + 1e-12;
}

// The coordinates of the finite truncation a spec acts on: Base 1..dim, plus
// Tail 1..dim when the spec is a z-norm over a direct sum.
inline std::vector<Coordinate> ambient_coordinates(const NormSpec& spec, std::uint32_t dim) {
  std::vector<Coordinate> out;
  out.reserve(spec.is_z_norm() ? 2 * dim : dim);
  for (std::uint32_t i = 1; i <= dim; ++i) out.push_back(base_coord(i));
  if (spec.is_z_norm())
    for (std::uint32_t i = 1; i <= dim; ++i) out.push_back(tail_coord(i));
  return out;
}

}  // namespace normlab
