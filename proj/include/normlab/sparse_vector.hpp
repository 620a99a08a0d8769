#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "normlab/coordinate.hpp"

namespace normlab {

namespace detail {
struct primal_tag;
struct dual_tag;
}  // namespace detail

// Finitely supported coefficient map over the two-sector index set.
// Exact zeros are dropped on construction so support is canonical and
// equality is well-defined. Values are immutable after construction;
// arithmetic returns new objects.
template <typename Tag>
class Coefficients {
 public:
  using Map = std::map<Coordinate, double>;

  Coefficients() = default;
  Coefficients(std::initializer_list<std::pair<Coordinate, double>> entries) {
    for (const auto& [c, v] : entries) insert_nonzero(c, v);
  }
  explicit Coefficients(const std::vector<std::pair<Coordinate, double>>& entries) {
    for (const auto& [c, v] : entries) insert_nonzero(c, v);
  }

  static Coefficients unit(Coordinate c) { return Coefficients{{c, 1.0}}; }

  double at(Coordinate c) const {
    auto it = entries_.find(c);
    return it == entries_.end() ? 0.0 : it->second;
  }

  bool empty() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }
  const Map& entries() const { return entries_; }

  CoordinateSet support() const {
    CoordinateSet s;
    for (const auto& [c, v] : entries_) s.insert(c);
    return s;
  }

  // Copy with one coordinate replaced (zero removes it).
  Coefficients with(Coordinate c, double value) const {
    Coefficients out = *this;
    out.entries_.erase(c);
    out.insert_nonzero(c, value);
    return out;
  }

  friend Coefficients operator+(const Coefficients& a, const Coefficients& b) {
    Coefficients out = a;
    for (const auto& [c, v] : b.entries_) out.add_nonzero(c, v);
    return out;
  }
  friend Coefficients operator-(const Coefficients& a, const Coefficients& b) {
    Coefficients out = a;
    for (const auto& [c, v] : b.entries_) out.add_nonzero(c, -v);
    return out;
  }
  friend Coefficients operator*(double s, const Coefficients& a) {
    Coefficients out;
    if (s == 0.0) return out;
    for (const auto& [c, v] : a.entries_) out.insert_nonzero(c, s * v);
    return out;
  }
  friend Coefficients operator*(const Coefficients& a, double s) { return s * a; }
  friend Coefficients operator/(const Coefficients& a, double s) { return (1.0 / s) * a; }
  Coefficients operator-() const { return -1.0 * *this; }

  friend bool operator==(const Coefficients&, const Coefficients&) = default;

 private:
  void insert_nonzero(Coordinate c, double v) {
    if (v != 0.0) entries_[c] = v;
  }
  void add_nonzero(Coordinate c, double v) {
    auto [it, inserted] = entries_.try_emplace(c, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0.0) entries_.erase(it);
    }
  }

  Map entries_;
};

using SparseVector = Coefficients<detail::primal_tag>;
using DualFunctional = Coefficients<detail::dual_tag>;

// <f, v> over the common support; bilinear.
inline double pair(const DualFunctional& f, const SparseVector& v) {
  double acc = 0.0;
  auto fi = f.entries().begin();
  auto vi = v.entries().begin();
  while (fi != f.entries().end() && vi != v.entries().end()) {
    if (fi->first < vi->first) {
      ++fi;
    } else if (vi->first < fi->first) {
      ++vi;
    } else {
      acc += fi->second * vi->second;
      ++fi;
      ++vi;
    }
  }
  return acc;
}

template <typename Tag>
Coefficients<Tag> restrict_to(const Coefficients<Tag>& v, const CoordinateSet& keep) {
  std::vector<std::pair<Coordinate, double>> kept;
  for (const auto& [c, val] : v.entries())
    if (keep.contains(c)) kept.emplace_back(c, val);
  return Coefficients<Tag>(kept);
}

template <typename Tag>
Coefficients<Tag> restrict_to(const Coefficients<Tag>& v, Sector s) {
  std::vector<std::pair<Coordinate, double>> kept;
  for (const auto& [c, val] : v.entries())
    if (c.sector == s) kept.emplace_back(c, val);
  return Coefficients<Tag>(kept);
}

// Coordinatewise comparison of absolute values on the union of supports.
// Below means |u| <= |v| everywhere with equality throughout; StrictlyBelow
// means |u| <= |v| everywhere and |u| < |v| somewhere.
enum class Dominance { StrictlyBelow, Below, Incomparable };

inline Dominance abs_compare(const SparseVector& u, const SparseVector& v) {
  bool strict = false;
  for (const auto& [c, uv] : u.entries()) {
    const double a = std::fabs(uv);
    const double b = std::fabs(v.at(c));
    if (a > b) return Dominance::Incomparable;
    if (a < b) strict = true;
  }
  for (const auto& [c, vv] : v.entries()) {
    if (u.at(c) == 0.0 && vv != 0.0) strict = true;
  }
  return strict ? Dominance::StrictlyBelow : Dominance::Below;
}

inline SparseVector indicator(const CoordinateSet& set) {
  std::vector<std::pair<Coordinate, double>> entries;
  entries.reserve(set.size());
  for (const Coordinate& c : set) entries.emplace_back(c, 1.0);
  return SparseVector(entries);
}

template <typename Tag>
double sup_norm(const Coefficients<Tag>& v) {
  double m = 0.0;
  for (const auto& [c, val] : v.entries()) m = std::max(m, std::fabs(val));
  return m;
}

template <typename Tag>
double l1_norm(const Coefficients<Tag>& v) {
  double s = 0.0;
  for (const auto& [c, val] : v.entries()) s += std::fabs(val);
  return s;
}

inline SparseVector as_vector(const DualFunctional& f) {
  std::vector<std::pair<Coordinate, double>> entries(f.entries().begin(), f.entries().end());
  return SparseVector(entries);
}

// Prefix indicator 1_{[n]} on the Base sector (indices 1..n).
inline SparseVector ones(std::uint32_t n) {
  std::vector<std::pair<Coordinate, double>> entries;
  entries.reserve(n);
  for (std::uint32_t i = 1; i <= n; ++i) entries.emplace_back(base_coord(i), 1.0);
  return SparseVector(entries);
}

}  // namespace normlab
