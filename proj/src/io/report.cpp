#include <cmath>
#include <limits>

#include "betatile/error.hpp"
#include "betatile/io.hpp"

namespace betatile {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::NotPisot: return "NotPisot";
    case Errc::NotUnit: return "NotUnit";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::Overlap: return "Overlap";
    case Errc::NotSurjective: return "NotSurjective";
    case Errc::EmptyPart: return "EmptyPart";
    case Errc::BadAlpha: return "BadAlpha";
    case Errc::PediciniGapViolated: return "PediciniGapViolated";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::UnknownDigit: return "UnknownDigit";
    case Errc::InfiniteV: return "InfiniteV";
    case Errc::NoFixedPoint: return "NoFixedPoint";
    case Errc::DigitsNotIntegral: return "DigitsNotIntegral";
    case Errc::NotSofic: return "NotSofic";
    case Errc::UnrenderableDimension: return "UnrenderableDimension";
    case Errc::BadConfig: return "BadConfig";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

json qbeta_json(const QBeta& x) {
  json a = json::array();
  for (const auto& c : x.coords()) {
    if (c.get_den() == 1 && c.get_num().fits_slong_p())
      a.push_back(c.get_num().get_si());
    else
      a.push_back(rational_str(c));
  }
  return a;
}

json qbeta_value_json(const QBeta& x) {
  // naive Horner-free sum: each term carries at most (2k + 3) roundings
  const double u = std::numeric_limits<double>::epsilon() / 2;
  double b = x.field()->beta_approx(), pw = 1, err = 0;
  for (std::size_t k = 0; k < x.coords().size(); ++k, pw *= b)
    err += std::abs(x.coords()[k].get_d()) * pw * double(2 * k + 3) * u;
  return {{"q", qbeta_json(x)}, {"value", x.approx()}, {"err", err}};
}

json digit_json(const BetaTransform& t, int digit) {
  const QBeta& a = t.digits()[digit];
  if (a.is_rational() && a.coords()[0].get_den() == 1) return a.coords()[0].get_num().get_si();
  return qbeta_json(a);
}

json word_json(const BetaTransform& t, const Word& w) {
  json pre = json::array(), per = json::array();
  for (int d : w.pre) pre.push_back(digit_json(t, d));
  for (int d : w.per) per.push_back(digit_json(t, d));
  return {{"preperiod", pre}, {"period", per}};
}

json expansion_report(const BetaTransform& t, const QBeta& x, const Expansion& e) {
  json j = word_json(t, e.word);
  j["x"] = qbeta_value_json(x);
  j["exact"] = true;
  j["value_check"] = word_value(t, e.word) == x;
  json digits = json::array();
  for (size_t i = 0; i < t.digits().size(); ++i) digits.push_back(qbeta_json(t.digits()[i]));
  j["digits"] = digits;
  return j;
}

json vset_report(const BetaTransform& t, const VData& v, const Density& h) {
  (void)t;
  json pts = json::array();
  for (size_t i = 0; i < v.points.size(); ++i) {
    pts.push_back({{"x", qbeta_value_json(v.points[i])},
                   {"J", {{"lo", qbeta_json(v.J[i].lo)}, {"hi", qbeta_json(v.J[i].hi)}}},
                   {"weight", h.h_approx[i]},
                   {"support", bool(h.support[i])}});
  }
  json disc = json::array();
  for (const auto& d : v.disc) disc.push_back({{"x", qbeta_value_json(d.x)}, {"m", d.m}});
  return {{"V", pts},
          {"size", v.points.size()},
          {"discontinuities", disc},
          {"density_exact", h.exact},
          {"density_residual", h.residual}};
}

json natext_report(const NatExt& nx, const VData& v) {
  json parts = json::array();
  for (size_t i = 0; i < nx.clouds.size(); ++i)
    parts.push_back({{"owner", qbeta_json(v.points[i])},
                     {"J_length", (nx.J[i].hi - nx.J[i].lo).approx()},
                     {"measure", nx.measure[i]},
                     {"points", nx.clouds[i].size()}});
  return {{"area", nx.area}, {"err", nx.err}, {"depth", nx.depth}, {"parts", parts}};
}

json clouds_report(const Gifs& g, const std::vector<TileCloud>& clouds) {
  json out = json::array();
  for (const auto& c : clouds) {
    json pts = json::array();
    for (std::size_t i = 0; i < c.size(); ++i) {
      json p = json::array();
      for (const auto& col : c.x) p.push_back(col[i]);
      pts.push_back(p);
    }
    out.push_back({{"owner", qbeta_json(g.v.points[c.vertex])}, {"depth", c.depth}, {"err", c.err}, {"points", pts}});
  }
  return out;
}

json periodic_report(const BetaTransform& t, const PeriodicSet& p) {
  json P = json::array(), cyc = json::array();
  for (const auto& x : p.points) {
    P.push_back(qbeta_json(x.x));
    json w = json::array();
    for (int d : x.cycle) w.push_back(digit_json(t, d));
    cyc.push_back({{"x", qbeta_value_json(x.x)}, {"period", w}});
  }
  return {{"P", P}, {"orbits", cyc}, {"candidates", p.candidates}};
}

json membership_report(const QBeta& z, const Membership& m) {
  json o = json::array();
  for (const auto& x : m.owners) o.push_back(qbeta_json(x));
  return {{"z", qbeta_json(z)}, {"k", m.k}, {"owners", o}, {"count", m.owners.size()}};
}

json w_report(const WCheck& w) {
  static const char* names[] = {"holds", "fails_by_budget", "refuted"};
  json j{{"status", names[int(w.status)]}, {"epsilon", qbeta_value_json(w.epsilon)}, {"tried", w.tried}};
  if (w.status == WStatus::Holds) {
    j["x"] = qbeta_json(w.x);
    j["common_z"] = w.common;
    json wt = json::array();
    for (const auto& x : w.witnesses) wt.push_back({{"y", qbeta_json(x.y)}, {"z", qbeta_json(x.z)}, {"k", x.k}});
    j["witnesses"] = wt;
  }
  return j;
}

json covering_report(const std::vector<QBeta>& samples, const CoveringEstimate& c) {
  json per = json::array();
  for (size_t i = 0; i < samples.size(); ++i) per.push_back({{"z", qbeta_json(samples[i])}, {"count", c.counts[i]}});
  json hist = json::object();
  for (const auto& [k, v] : c.histogram) hist[std::to_string(k)] = v;
  return {{"min_count", c.min}, {"max_count", c.max}, {"histogram", hist}, {"samples", per}};
}

json automaton_json(const BetaTransform& t, const ShiftAutomaton& a) {
  json tr = json::array();
  for (std::size_t s = 0; s < a.size(); ++s)
    for (std::size_t d = 0; d < a.next[s].size(); ++d)
      if (a.next[s][d] >= 0) tr.push_back({{"from", s}, {"to", a.next[s][d]}, {"label", digit_json(t, int(d))}});
  json j{{"states", a.size()},
         {"raw_states", a.raw_states},
         {"start", a.start},
         {"transitions", tr},
         {"finite_type", a.finite_type}};
  if (a.finite_type) {
    j["memory"] = a.memory;
    json fw = json::array();
    for (const auto& w : a.forbidden) {
      json x = json::array();
      for (int d : w) x.push_back(digit_json(t, d));
      fw.push_back(x);
    }
    j["forbidden"] = fw;
    j["forbidden_complete"] = a.forbidden_complete;
  }
  return j;
}

json sofic_report(const BetaTransform& t, const SoficReport& s, const ShiftAutomaton* a) {
  BetaTransform r = t.side() == Side::Right ? t : t.twin();
  json ends = json::array();
  for (size_t i = 0; i < s.lower.size(); ++i) {
    json e{{"lo", qbeta_json(r.pieces()[i].lo)}, {"b_lo", word_json(t, s.lower[i].word)}};
    if (i < s.upper.size()) {
      e["hi"] = qbeta_json(r.pieces()[i].hi);
      e["b_hi"] = word_json(t, s.upper[i].word);
    }
    ends.push_back(e);
  }
  json j{{"sofic", s.sofic}, {"endpoints", ends}};
  if (s.witness) j["witness"] = qbeta_json(*s.witness);
  if (a) j["automaton"] = automaton_json(t, *a);
  return j;
}

json transducer_json(const BetaTransform& t, const DiffTransducer& d) {
  json st = json::array(), ed = json::array();
  for (const auto& s : d.states) st.push_back({{"delta", qbeta_json(s.delta)}, {"v", s.v}, {"w", s.w}});
  for (const auto& e : d.edges)
    ed.push_back({{"from", e.from}, {"to", e.to}, {"in", digit_json(t, e.a)}, {"out", digit_json(t, e.b)}});
  return {{"states", st}, {"transitions", ed}, {"initial", d.initial}};
}

json decision_report(const BetaTransform& t, const TilingDecision& d) {
  (void)t;
  json pairs = json::array();
  for (const auto& p : d.pairs) pairs.push_back({{"delta", qbeta_value_json(p.delta)}, {"v", p.v}, {"w", p.w}});
  json diffs = json::array();
  for (const auto& x : d.differences) diffs.push_back(qbeta_json(x));
  json comps = json::array();
  for (const auto& s : d.sccs) {
    json cp = json::array();
    for (const auto& c : s.charpoly) cp.push_back(c.get_str());
    comps.push_back({{"size", s.states.size()},
                     {"beta_eigenvalue", s.beta_eigen},
                     {"radius_lo", s.radius_lo},
                     {"radius_hi", s.radius_hi},
                     {"charpoly", cp}});
  }
  return {{"verdict", d.tiling ? "tiling" : "multiple"},
          {"pairs", pairs},
          {"differences", diffs},
          {"components", comps},
          {"candidates", d.candidates},
          {"states", d.transducer.states.size()},
          {"transitions", d.transducer.edges.size()}};
}

json torus_report(const TorusCoverage& c) {
  json hist = json::object();
  for (const auto& [k, v] : c.histogram) hist[std::to_string(k)] = v;
  return {{"histogram", hist}, {"samples", c.samples}, {"fraction_one", c.fraction_one}, {"scale", c.scale}};
}

}  // namespace betatile
