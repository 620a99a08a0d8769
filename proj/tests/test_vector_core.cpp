#include <catch2/catch_amalgamated.hpp>

#include <unordered_set>

#include "normlab/normlab.hpp"
#include "support/generators.hpp"

using namespace normlab;

namespace {
const SparseVector e1 = SparseVector::unit(base_coord(1));
const SparseVector e2 = SparseVector::unit(base_coord(2));
}  // namespace

TEST_CASE("coordinate ordering and hashing") {
  CHECK(base_coord(1) < base_coord(2));
  CHECK(base_coord(7) < tail_coord(1));
  CHECK(tail_coord(2) < tail_coord(3));
  std::unordered_set<Coordinate> set{base_coord(1), tail_coord(1), base_coord(1)};
  CHECK(set.size() == 2);
  CHECK(to_string(tail_coord(3)) == "t:3");
}

TEST_CASE("pairing is biorthogonal on unit vectors") {
  const DualFunctional f1 = DualFunctional::unit(base_coord(1));
  CHECK(pair(f1, e1) == 1.0);
  CHECK(pair(f1, e2) == 0.0);
  const DualFunctional f{{base_coord(1), 0.5}, {base_coord(2), 2.0}};
  const SparseVector v{{base_coord(1), 2.0}, {base_coord(2), -1.0}};
  CHECK(pair(f, v) == -1.0);
}

TEST_CASE("pairing is bilinear") {
  SeededRng rng(101);
  const auto coords = testgen::both_sectors(9);
  for (int i = 0; i < 500; ++i) {
    const SparseVector fvec = testgen::random_nonzero(rng, coords);
    DualFunctional f;
    for (const auto& [c, val] : fvec.entries()) f = f.with(c, val);
    const SparseVector u = testgen::random_vector(rng, coords);
    const SparseVector v = testgen::random_vector(rng, coords);
    const double a = rng.uniform(-3.0, 3.0);
    const double b = rng.uniform(-3.0, 3.0);
    const double lhs = pair(f, a * u + b * v);
    const double rhs = a * pair(f, u) + b * pair(f, v);
    CHECK(std::fabs(lhs - rhs) <=
          1e-12 * (std::fabs(a * pair(f, u)) + std::fabs(b * pair(f, v)) + 1.0));
  }
}

TEST_CASE("restriction projects onto a coordinate set") {
  CHECK(restrict_to(e1 + e2, CoordinateSet{base_coord(1)}) == e1);
  CHECK(restrict_to(e1, CoordinateSet{}).empty());
  const SparseVector v{{base_coord(2), -0.5}, {tail_coord(1), 2.0}};
  CHECK(restrict_to(v, v.support()) == v);
}

TEST_CASE("restriction is idempotent and dominated") {
  SeededRng rng(102);
  const auto coords = testgen::both_sectors(9);
  for (int i = 0; i < 500; ++i) {
    const SparseVector v = testgen::random_vector(rng, coords);
    CoordinateSet f;
    for (const Coordinate& c : coords)
      if (rng.uniform01() < 0.4) f.insert(c);
    const SparseVector r = restrict_to(v, f);
    CHECK(restrict_to(r, f) == r);
    CHECK(abs_compare(r, v) != Dominance::Incomparable);
  }
}

TEST_CASE("absolute-value comparison") {
  CHECK(abs_compare(0.5 * e1, e1) == Dominance::StrictlyBelow);
  CHECK(abs_compare(e1, e1) == Dominance::Below);
  CHECK(abs_compare(e1, e2) == Dominance::Incomparable);
  CHECK(abs_compare(-e1, e1) == Dominance::Below);
  CHECK(abs_compare(SparseVector{}, e1) == Dominance::StrictlyBelow);
}

TEST_CASE("indicator vectors") {
  CHECK(indicator(CoordinateSet{base_coord(1), base_coord(2), base_coord(3), base_coord(4)}) ==
        ones(4));
  CHECK(indicator(CoordinateSet{}).empty());
  CHECK(indicator(CoordinateSet{base_coord(1)}) == e1);
}

TEST_CASE("sup and l1 norms") {
  const SparseVector v = e1 - 2.0 * e2;
  CHECK(sup_norm(v) == 2.0);
  CHECK(l1_norm(v) == 3.0);
  CHECK(sup_norm(SparseVector{}) == 0.0);
  CHECK(l1_norm(SparseVector{}) == 0.0);
  CHECK(sup_norm(ones(4)) == 1.0);
  CHECK(l1_norm(ones(4)) == 4.0);
}

TEST_CASE("sup below l1 with equality only on singletons") {
  SeededRng rng(103);
  const auto coords = testgen::both_sectors(9);
  for (int i = 0; i < 500; ++i) {
    const SparseVector v = testgen::random_vector(rng, coords);
    CHECK(sup_norm(v) <= l1_norm(v));
    if (v.support_size() <= 1) {
      CHECK(sup_norm(v) == l1_norm(v));
    } else {
      CHECK(sup_norm(v) < l1_norm(v));
    }
  }
}

TEST_CASE("exact zeros are dropped on construction") {
  const SparseVector v{{base_coord(1), 0.0}, {base_coord(2), 1.0}};
  CHECK(v.support_size() == 1);
  CHECK((v - v).empty());
  CHECK(v.with(base_coord(2), 0.0).empty());
}
