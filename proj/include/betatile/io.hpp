#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "betatile/sofic.hpp"

namespace betatile {

using json = nlohmann::json;

struct RunConfig {
  json raw;
  FieldPtr field;
  BetaTransform transform;  // after restriction when requested
  BetaTransform original;
  bool restricted = false;
  std::string hash;  // FNV-1a of the canonical config text
};

// explicit form {"field","digits","parts","side"} or {"preset","field","alpha"|"digits"}, optional "restrict"
RunConfig parse_config(const json& j);
RunConfig load_config(const std::string& path);
QBeta qbeta_from_json(const FieldPtr& f, const json& j);
std::vector<QBeta> samples_from_json(const FieldPtr& f, const json& j);

std::uint64_t fnv1a(const std::string& s);
std::string hex64(std::uint64_t v);

// integral coordinates as integers, others as "p/q" strings
json qbeta_json(const QBeta& x);
// coordinates plus the value with its rounding bound
json qbeta_value_json(const QBeta& x);
json digit_json(const BetaTransform& t, int digit);
json word_json(const BetaTransform& t, const Word& w);

json expansion_report(const BetaTransform& t, const QBeta& x, const Expansion& e);
json vset_report(const BetaTransform& t, const VData& v, const Density& h);
json natext_report(const NatExt& nx, const VData& v);
json clouds_report(const Gifs& g, const std::vector<TileCloud>& clouds);
json periodic_report(const BetaTransform& t, const PeriodicSet& p);
json membership_report(const QBeta& z, const Membership& m);
json w_report(const WCheck& w);
json covering_report(const std::vector<QBeta>& samples, const CoveringEstimate& c);
json sofic_report(const BetaTransform& t, const SoficReport& s, const ShiftAutomaton* a);
json automaton_json(const BetaTransform& t, const ShiftAutomaton& a);
json transducer_json(const BetaTransform& t, const DiffTransducer& d);
json decision_report(const BetaTransform& t, const TilingDecision& d);
json torus_report(const TorusCoverage& c);

// deterministic palette colour for an owner
std::string owner_color(const QBeta& owner);

// d = 2: the domain as J_x x (-D_x) layers; d = 3: the tiles D_x in H
std::string natext_svg(const Gifs& g, const NatExt& nx);
// d = 2, 3: translates of the domain by scale * Z^d, projected to the first two ambient axes
std::string translates_svg(const Gifs& g, const NatExt& nx, long box, long scale);

}  // namespace betatile
