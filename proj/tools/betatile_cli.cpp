#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "betatile/error.hpp"
#include "betatile/io.hpp"

using namespace betatile;

namespace {

struct Opts {
  std::string config, out, samples, svg, dot, x, z;
  int depth = -1;
  int precision = 10;
  long budget = -1;
  long box = 2, scale = 1, count = 50;
  std::size_t points = 20000;
  std::uint64_t seed = 1;
};

int exit_code(Errc c) {
  switch (c) {
    case Errc::BudgetExceeded: return 3;
    case Errc::NotSofic:
    case Errc::UnrenderableDimension: return 4;
    case Errc::Internal: return 1;
    default: return 2;
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary);
  if (!o) fail(Errc::BadConfig, "cannot write " + path);
  o << text;
}

QBeta parse_point(const FieldPtr& f, const std::string& s) {
  if (!s.empty() && s[0] == '[') return qbeta_from_json(f, json::parse(s));
  json a = json::array();
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) a.push_back(tok);
  return qbeta_from_json(f, a);
}

std::size_t budget_or(const Opts& o, std::size_t def) { return o.budget > 0 ? std::size_t(o.budget) : def; }

struct Pipeline {
  const Opts& o;
  RunConfig rc;
  std::optional<VData> v;
  std::optional<Gifs> g;
  std::optional<Density> h;

  explicit Pipeline(const Opts& opts) : o(opts), rc(load_config(opts.config)) {}

  const BetaTransform& t() const { return rc.transform; }
  const VData& vdata() {
    if (!v) v = compute_v(t(), budget_or(o, 100000));
    return *v;
  }
  const Density& density() {
    if (!h) h = invariant_density(t(), vdata());
    return *h;
  }
  const Gifs& gifs() {
    if (!g) g = gifs_build(t(), vdata());
    return *g;
  }
  int depth() {
    if (o.depth >= 0) return o.depth;
    return depth_for(gifs(), std::ldexp(1.0, -o.precision));
  }
  PeriodicSet periodic() { return purely_periodic_points(t(), budget_or(o, 50000000)); }
  std::vector<QBeta> samples() {
    if (!o.samples.empty()) {
      std::ifstream in(o.samples);
      if (!in) fail(Errc::BadConfig, "cannot read " + o.samples);
      return samples_from_json(rc.field, json::parse(in));
    }
    return default_samples(t(), std::size_t(o.count));
  }
};

json run(const std::string& cmd, const Opts& o) {
  Pipeline p(o);
  json r;
  r["command"] = cmd;
  r["config_hash"] = p.rc.hash;
  r["restricted"] = p.rc.restricted;
  r["precision"] = o.precision;
  r["depth"] = nullptr;
  r["err"] = 0.0;  // exact unless a cloud is involved

  if (cmd == "expand") {
    if (o.x.empty()) fail(Errc::BadConfig, "expand needs --x");
    QBeta x = parse_point(p.rc.field, o.x);
    r["result"] = expansion_report(p.t(), x, expand(p.t(), x, budget_or(o, 100000)));
  } else if (cmd == "vset") {
    r["result"] = vset_report(p.t(), p.vdata(), p.density());
  } else if (cmd == "natext" || cmd == "tiles") {
    int k = p.depth();
    NatExt nx = natext_domain(p.gifs(), p.density(), k);
    r["depth"] = k;
    r["err"] = nx.err;
    r["result"] = natext_report(nx, p.vdata());
    if (cmd == "tiles") r["clouds"] = clouds_report(p.gifs(), nx.clouds);
    if (!o.svg.empty()) write_text(o.svg, natext_svg(p.gifs(), nx));
  } else if (cmd == "periodic") {
    r["result"] = periodic_report(p.t(), p.periodic());
  } else if (cmd == "check-f") {
    PeriodicSet ps = p.periodic();
    FCheck f = check_f(ps);
    r["result"] = {{"holds", f.holds}, {"count", f.count}, {"P", periodic_report(p.t(), ps)["P"]}};
  } else if (cmd == "check-w") {
    PeriodicSet ps = p.periodic();
    WCheck w = check_w(p.t(), ps, budget_or(o, 4000));
    json wr = w_report(w);
    if (w.status == WStatus::FailsByBudget) {
      try {
        TilingDecision d = decide_tiling(p.gifs());
        if (!d.tiling) {
          wr["status"] = "refuted";
          wr["refutation"] = decision_report(p.t(), d);
        }
      } catch (const Error& e) {
        if (e.code() != Errc::NotSofic) throw;
      }
    }
    r["result"] = wr;
  } else if (cmd == "contains") {
    if (o.z.empty()) fail(Errc::BadConfig, "contains needs --z");
    QBeta z = parse_point(p.rc.field, o.z);
    r["result"] = membership_report(z, tiles_containing(p.t(), p.periodic(), z));
  } else if (cmd == "degree") {
    std::vector<QBeta> s = p.samples();
    r["result"] = covering_report(s, covering_degree_estimate(p.t(), p.periodic(), s));
  } else if (cmd == "sofic") {
    SoficReport s = soficity_check(p.t(), budget_or(o, 100000));
    if (s.sofic) {
      ShiftAutomaton a = build_automaton(p.t());
      r["result"] = sofic_report(p.t(), s, &a);
      if (!o.dot.empty()) write_text(o.dot, automaton_dot(p.t(), a));
    } else {
      r["result"] = sofic_report(p.t(), s, nullptr);
    }
  } else if (cmd == "decide-tiling") {
    int k = o.depth >= 0 ? o.depth : 10;
    TilingDecision d = decide_tiling(p.gifs(), k, budget_or(o, 2000000));
    r["depth"] = k;
    r["result"] = decision_report(p.t(), d);
    if (!o.dot.empty()) write_text(o.dot, transducer_dot(p.t(), d.transducer));
  } else if (cmd == "translates") {
    int k = p.depth();
    NatExt nx = natext_domain(p.gifs(), p.density(), k);
    TorusCoverage c = torus_translates(p.gifs(), nx, o.box, o.points, o.scale, o.seed);
    r["depth"] = k;
    r["err"] = nx.err;
    r["result"] = torus_report(c);
    if (!o.svg.empty()) write_text(o.svg, translates_svg(p.gifs(), nx, 1, o.scale));
  } else {
    fail(Errc::BadConfig, "unknown command " + cmd);
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"beta-expansions, natural extensions and multiple tilings for Pisot units"};
  app.require_subcommand(1);
  Opts o;
  const std::vector<std::pair<std::string, std::string>> cmds = {
      {"expand", "T-expansion of --x"},
      {"vset", "the set V, intervals J_x and the invariant density"},
      {"natext", "natural extension domain and its area"},
      {"tiles", "tile clouds D_x as point lists"},
      {"periodic", "purely periodic points of Z[beta]"},
      {"check-f", "property (F)"},
      {"check-w", "property (W)"},
      {"contains", "tiles containing Phi(--z)"},
      {"degree", "covering degree estimate over samples"},
      {"sofic", "soficity and the admissible-word automaton"},
      {"decide-tiling", "tiling decision by the difference transducer"},
      {"translates", "coverage of R^d by lattice translates of the domain"}};
  for (const auto& [name, help] : cmds) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--config", o.config, "transformation config (JSON)")->required();
    s->add_option("--depth", o.depth, "cloud depth");
    s->add_option("--precision", o.precision, "target cloud error 2^-BITS when --depth is absent");
    s->add_option("--out", o.out, "report path (default stdout)");
    s->add_option("--samples", o.samples, "JSON list of sample points");
    s->add_option("--budget", o.budget, "search budget");
    s->add_option("--x", o.x, "point as p/q coordinates, comma separated");
    s->add_option("--z", o.z, "point as p/q coordinates, comma separated");
    s->add_option("--svg", o.svg, "SVG output path");
    s->add_option("--dot", o.dot, "Graphviz output path");
    s->add_option("--box", o.box, "lattice box radius for translates");
    s->add_option("--scale", o.scale, "lattice scale for translates");
    s->add_option("--count", o.count, "number of default samples");
    s->add_option("--points", o.points, "coverage sample size");
    s->add_option("--seed", o.seed, "sampling seed");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  std::string cmd = app.get_subcommands().front()->get_name();
  try {
    json r = run(cmd, o);
    std::string text = r.dump(2) + "\n";
    if (o.out.empty())
      std::cout << text;
    else
      write_text(o.out, text);
    return 0;
  } catch (const Error& e) {
    std::cerr << json{{"error", errc_name(e.code())}, {"message", e.what()}}.dump() << "\n";
    return exit_code(e.code());
  } catch (const json::exception& e) {
    std::cerr << json{{"error", "BadConfig"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
}
