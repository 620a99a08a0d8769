#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "normlab/certificates.hpp"
#include "normlab/coordinate.hpp"
#include "normlab/errors.hpp"
#include "normlab/norm.hpp"
#include "normlab/probes.hpp"
#include "normlab/rng.hpp"
#include "normlab/sparse_vector.hpp"

namespace normlab {

using nlohmann::json;

inline Coordinate parse_coordinate(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos || colon + 1 >= s.size())
    throw ParseError("coordinate must look like b:1 or t:3, got '" + s + "'");
  const std::string sector = s.substr(0, colon);
  Sector sec;
  if (sector == "b") sec = Sector::Base;
  else if (sector == "t") sec = Sector::Tail;
  else throw ParseError("coordinate sector must be 'b' or 't', got '" + sector + "'");
  try {
    const unsigned long idx = std::stoul(s.substr(colon + 1));
    return Coordinate{sec, static_cast<std::uint32_t>(idx)};
  } catch (const std::exception&) {
    throw ParseError("bad coordinate index in '" + s + "'");
  }
}

inline void to_json(json& j, const Coordinate& c) { j = to_string(c); }
inline void from_json(const json& j, Coordinate& c) { c = parse_coordinate(j.get<std::string>()); }

// Vector literal format shared by the CLI and test fixtures:
// {"entries": [["b",1,0.5],["t",3,-0.25]]}
template <typename Tag>
void to_json(json& j, const Coefficients<Tag>& v) {
  json entries = json::array();
  for (const auto& [c, val] : v.entries())
    entries.push_back(json::array({c.sector == Sector::Base ? "b" : "t", c.index, val}));
  j = json{{"entries", std::move(entries)}};
}

template <typename Tag>
void from_json(const json& j, Coefficients<Tag>& v) {
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
    throw ParseError("vector literal must be {\"entries\": [[sector, index, value], ...]}");
  Coefficients<Tag> out;
  for (const auto& e : j["entries"]) {
    if (!e.is_array() || e.size() != 3) throw ParseError("vector entry must be [sector, index, value]");
    const std::string sector = e[0].get<std::string>();
    Sector sec;
    if (sector == "b") sec = Sector::Base;
    else if (sector == "t") sec = Sector::Tail;
    else throw ParseError("vector entry sector must be 'b' or 't'");
    out = out.with(Coordinate{sec, e[1].get<std::uint32_t>()}, e[2].get<double>());
  }
  v = std::move(out);
}

// Norm configs: {"norm":"sup"} | {"norm":"l1"} | {"norm":"lp","p":2.0} |
// {"norm":"day"} | {"norm":"luxemburg","modular":"nakano"|"orlicz-m"} |
// {"norm":"z","base":{...}}. "nakano" / "orlicz-m" are accepted as shorthand
// norm names; z-norms serialize canonically through "z".
inline NormSpec parse_norm_spec(const json& j);

inline Modular parse_modular(const json& j, const json& parent) {
  const std::string name = j.get<std::string>();
  if (name == "nakano") return Modular::nakano();
  if (name == "orlicz-m") return Modular::orlicz();
  if (name == "phi-sum") {
    if (!parent.contains("base")) throw ParseError("phi-sum modular needs a \"base\" norm");
    return Modular::phi_sum(parse_norm_spec(parent["base"]));
  }
  throw ParseError("unknown modular '" + name + "'");
}

inline NormSpec parse_norm_spec(const json& j) {
  if (!j.is_object() || !j.contains("norm")) throw ParseError("norm config must contain \"norm\"");
  const std::string name = j["norm"].get<std::string>();
  if (name == "sup") return NormSpec::sup();
  if (name == "l1") return NormSpec::l1();
  if (name == "day") return NormSpec::day();
  if (name == "lp") {
    if (!j.contains("p")) throw ParseError("lp norm needs \"p\"");
    const double p = j["p"].get<double>();
    if (!(p > 1.0)) throw ParseError("lp norm needs p > 1");
    return NormSpec::lp(p);
  }
  if (name == "nakano") return NormSpec::luxemburg(Modular::nakano());
  if (name == "orlicz-m") return NormSpec::luxemburg(Modular::orlicz());
  if (name == "z") {
    if (!j.contains("base")) throw ParseError("z norm needs a \"base\" norm");
    return NormSpec::z(parse_norm_spec(j["base"]));
  }
  if (name == "luxemburg") {
    if (!j.contains("modular")) throw ParseError("luxemburg norm needs \"modular\"");
    return NormSpec::luxemburg(parse_modular(j["modular"], j));
  }
  throw ParseError("unknown norm '" + name + "'");
}

inline void to_json(json& j, const NormSpec& spec) {
  switch (spec.kind()) {
    case NormSpec::Kind::Sup: j = json{{"norm", "sup"}}; return;
    case NormSpec::Kind::L1: j = json{{"norm", "l1"}}; return;
    case NormSpec::Kind::Day: j = json{{"norm", "day"}}; return;
    case NormSpec::Kind::Lp: j = json{{"norm", "lp"}, {"p", spec.p()}}; return;
    case NormSpec::Kind::Luxemburg:
      if (spec.is_z_norm()) {
        j = json{{"norm", "z"}, {"base", spec.modular().base()}};
      } else {
        j = json{{"norm", "luxemburg"}, {"modular", spec.modular().name()}};
      }
      return;
  }
}

inline void from_json(const json& j, NormSpec& spec) { spec = parse_norm_spec(j); }

inline void to_json(json& j, const DiameterReport& r) {
  j = json{{"lower_bound", r.lower_bound},
           {"witness_pair", json::array({r.witness_a, r.witness_b})},
           {"budget_used", r.budget_used},
           {"functional_rescale", r.functional_rescale},
           {"seed", r.seed},
           {"rng", SeededRng::name()},
           {"tol", r.tol}};
  if (r.upper_bound) j["upper_bound"] = *r.upper_bound;
}

inline void to_json(json& j, const UsmReport& r) {
  j = json{{"alpha", r.alpha},
           {"eps", r.eps},
           {"E_estimate", r.e_estimate},
           {"witness", r.witness},
           {"dim", r.dim},
           {"seed", r.seed},
           {"rng", SeededRng::name()},
           {"tol", r.tol}};
}

inline void to_json(json& j, const MonotonicityResult& r) {
  j = json{{"pass", r.pass}, {"trials", r.trials}, {"seed", r.seed}, {"rng", SeededRng::name()}};
  if (r.counterexample)
    j["counterexample"] = json::array({r.counterexample->first, r.counterexample->second});
}

inline void to_json(json& j, const MidpointResult& r) {
  j = json{{"violation_found", r.violation_found()},
           {"trials", r.trials},
           {"seed", r.seed},
           {"rng", SeededRng::name()}};
  if (r.segment) j["segment"] = json::array({r.segment->first, r.segment->second});
}

inline void to_json(json& j, const PhiStrictnessResult& r) {
  j = json{{"pass", r.pass}, {"trials", r.trials}, {"seed", r.seed}, {"rng", SeededRng::name()}};
  if (r.witness) j["witness"] = json::array({r.witness->first, r.witness->second});
}

inline void to_json(json& j, const Ld2pCertificate& c) {
  j = json{{"alpha", c.alpha},
           {"K", c.K},
           {"l", c.l},
           {"eta", c.eta},
           {"theta", c.theta},
           {"a_frak", c.a_frak},
           {"eps", c.eps},
           {"E_bound", c.e_bound},
           {"diameter_bound", c.diameter_bound},
           {"truncation_dim", c.truncation_dim},
           {"probe_seed", c.probe_seed},
           {"probe_trials", c.probe_trials},
           {"tol", c.tol}};
}

inline void from_json(const json& j, Ld2pCertificate& c) {
  c.alpha = j.at("alpha").get<Coordinate>();
  c.K = j.at("K").get<double>();
  c.l = j.at("l").get<double>();
  c.eta = j.at("eta").get<double>();
  c.theta = j.at("theta").get<double>();
  c.a_frak = j.at("a_frak").get<double>();
  c.eps = j.at("eps").get<double>();
  c.e_bound = j.at("E_bound").get<double>();
  c.diameter_bound = j.at("diameter_bound").get<double>();
  c.truncation_dim = j.at("truncation_dim").get<std::uint32_t>();
  c.probe_seed = j.at("probe_seed").get<std::uint64_t>();
  c.probe_trials = j.at("probe_trials").get<std::uint64_t>();
  c.tol = j.at("tol").get<double>();
}

inline void to_json(json& j, const CertifyOutcome& o) {
  j = json{{"status", o.conclusive() ? "certificate" : "inconclusive"}};
  if (o.conclusive()) j["certificate"] = *o.certificate;
  if (!o.reason.empty()) j["reason"] = o.reason;
  if (std::isfinite(o.K)) j["K"] = o.K;
  if (std::isfinite(o.l)) j["l"] = o.l;
}

// Inequality chain behind a certificate, with all intermediate values.
inline json explain_certificate(const Ld2pCertificate& c) {
  const double window_lo = (c.K + 1.0) / (c.l * c.K + 1.0);
  return json{{"eta_window", json::array({window_lo, 1.0})},
              {"eta", c.eta},
              {"f_theta", usm_affine(c.theta, c.eta, c.l, c.K)},
              {"f_one", usm_affine(1.0, c.eta, c.l, c.K)},
              {"aK", c.a_frak * c.K},
              {"one_minus_2eps", 1.0 - 2.0 * c.eps},
              {"C", (1.0 - 1.5 * c.eps) * (1.0 - c.e_bound)},
              {"diameter_bound", c.diameter_bound}};
}

}  // namespace normlab
