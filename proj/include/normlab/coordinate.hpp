#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <set>
#include <string>

namespace normlab {

// Two-sector index set: Base holds the coordinates of a single lattice space
// (or the X-part of a direct sum), Tail holds the c0-part driving the
// index-weighted modular. Single-lattice spaces simply never use Tail.
enum class Sector : std::uint8_t { Base = 0, Tail = 1 };

struct Coordinate {
  Sector sector = Sector::Base;
  std::uint32_t index = 1;

  friend constexpr auto operator<=>(const Coordinate&, const Coordinate&) = default;
};

constexpr Coordinate base_coord(std::uint32_t i) { return {Sector::Base, i}; }
constexpr Coordinate tail_coord(std::uint32_t i) { return {Sector::Tail, i}; }

inline std::string to_string(const Coordinate& c) {
  return (c.sector == Sector::Base ? "b:" : "t:") + std::to_string(c.index);
}

using CoordinateSet = std::set<Coordinate>;

}  // namespace normlab

template <>
struct std::hash<normlab::Coordinate> {
  std::size_t operator()(const normlab::Coordinate& c) const noexcept {
    const std::uint64_t v =
        (static_cast<std::uint64_t>(c.sector) << 32) | c.index;
    return std::hash<std::uint64_t>{}(v);
  }
};
