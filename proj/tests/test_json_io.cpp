#include <catch2/catch_amalgamated.hpp>

#include "normlab/normlab.hpp"
#include "support/generators.hpp"

using namespace normlab;

TEST_CASE("vector literals round-trip through JSON") {
  SeededRng rng(601);
  const auto coords = testgen::both_sectors(9);
  for (int i = 0; i < 200; ++i) {
    const SparseVector v = testgen::random_vector(rng, coords);
    const json j = v;
    CHECK(j.at("entries").is_array());
    CHECK(j.get<SparseVector>() == v);
  }
  const json literal = json::parse(R"({"entries": [["b",1,0.5],["t",3,-0.25]]})");
  const auto v = literal.get<SparseVector>();
  CHECK(v.at(base_coord(1)) == 0.5);
  CHECK(v.at(tail_coord(3)) == -0.25);
}

TEST_CASE("coordinates parse from sector:index strings") {
  CHECK(parse_coordinate("b:1") == base_coord(1));
  CHECK(parse_coordinate("t:12") == tail_coord(12));
  CHECK_THROWS_AS(parse_coordinate("x:1"), ParseError);
  CHECK_THROWS_AS(parse_coordinate("b"), ParseError);
  CHECK_THROWS_AS(parse_coordinate("b:abc"), ParseError);
}

TEST_CASE("norm configs parse in all documented forms") {
  CHECK(parse_norm_spec(json::parse(R"({"norm":"sup"})")).kind() == NormSpec::Kind::Sup);
  CHECK(parse_norm_spec(json::parse(R"({"norm":"l1"})")).kind() == NormSpec::Kind::L1);
  CHECK(parse_norm_spec(json::parse(R"({"norm":"day"})")).kind() == NormSpec::Kind::Day);
  CHECK(parse_norm_spec(json::parse(R"({"norm":"lp","p":2.0})")).p() == 2.0);
  const NormSpec lux = parse_norm_spec(json::parse(R"({"norm":"luxemburg","modular":"nakano"})"));
  CHECK(lux.kind() == NormSpec::Kind::Luxemburg);
  CHECK(lux.modular().kind() == Modular::Kind::Nakano);
  CHECK(parse_norm_spec(json::parse(R"({"norm":"nakano"})")).modular().kind() ==
        Modular::Kind::Nakano);
  CHECK(parse_norm_spec(json::parse(R"({"norm":"orlicz-m"})")).modular().kind() ==
        Modular::Kind::OrliczM);
  const NormSpec z = parse_norm_spec(json::parse(R"({"norm":"z","base":{"norm":"lp","p":2.0}})"));
  CHECK(z.is_z_norm());
  CHECK(z.modular().base().p() == 2.0);
  const NormSpec z2 = parse_norm_spec(
      json::parse(R"({"norm":"luxemburg","modular":"phi-sum","base":{"norm":"day"}})"));
  CHECK(z2.is_z_norm());

  CHECK_THROWS_AS(parse_norm_spec(json::parse(R"({"norm":"frobenius"})")), ParseError);
  CHECK_THROWS_AS(parse_norm_spec(json::parse(R"({"norm":"lp"})")), ParseError);
  CHECK_THROWS_AS(parse_norm_spec(json::parse(R"({"norm":"lp","p":0.5})")), ParseError);
  CHECK_THROWS_AS(parse_norm_spec(json::parse(R"({"norm":"z"})")), ParseError);
  CHECK_THROWS_AS(parse_norm_spec(json::parse(R"({"p":2.0})")), ParseError);
}

TEST_CASE("norm configs serialize canonically") {
  const json z = NormSpec::z(NormSpec::lp(2.0));
  CHECK(z["norm"] == "z");
  CHECK(z["base"]["norm"] == "lp");
  CHECK(parse_norm_spec(z).is_z_norm());
  const json lux = NormSpec::luxemburg(Modular::orlicz());
  CHECK(lux["norm"] == "luxemburg");
  CHECK(lux["modular"] == "orlicz-m");
  const json day = NormSpec::day();
  CHECK(day == json::parse(R"({"norm":"day"})"));
}

TEST_CASE("reports serialize with tolerance, seed, and rng name") {
  const auto rep = slice_diameter_lb(NormSpec::sup(),
                                     make_slice(DualFunctional::unit(base_coord(1)), 0.1),
                                     4, 100, 9);
  const json j = rep;
  CHECK(j.contains("lower_bound"));
  CHECK(j.at("witness_pair").size() == 2);
  CHECK(j.at("seed") == 9);
  CHECK(j.at("tol").get<double>() == kDefaultTol);
  CHECK(j.at("rng") == "mt19937_64");
  CHECK(j.at("budget_used").get<std::uint64_t>() <= 100);

  const auto usm = usm_residual_probe(NormSpec::lp(2.0), base_coord(1), 0.1, 6, 5, 9);
  const json ju = usm;
  CHECK(ju.at("alpha") == "b:1");
  CHECK(ju.contains("E_estimate"));
  CHECK(ju.contains("witness"));

  const json jm = strict_monotonicity_probe(NormSpec::sup(), 500, 9);
  CHECK(jm.at("pass") == false);
  CHECK(jm.at("counterexample").size() == 2);
}
