#pragma once

#include <optional>
#include <string>
#include <vector>

#include "betatile/tiling.hpp"

namespace betatile {

// b(l) of every piece under T and b~(r) under the left twin
struct SoficReport {
  bool sofic = false;
  std::vector<Expansion> lower, upper;  // per piece, in piece order
  std::optional<QBeta> witness;         // endpoint whose orbit did not close
};

SoficReport soficity_check(const BetaTransform& t, std::size_t budget = 100000);

// Minimal deterministic automaton of the factor language of the closed shift.
// Every state is accepting; a missing transition rejects.
struct ShiftAutomaton {
  int start = 0;
  std::vector<std::vector<int>> next;  // [state][digit index], -1 when undefined
  std::vector<IntervalSet> follower;   // one follower set per state (a representative after merging)
  std::size_t raw_states = 0;          // before minimisation
  bool finite_type = false;
  int memory = -1;                                // synchronising length when finite_type
  std::vector<std::vector<int>> forbidden;        // minimal forbidden words when finite_type
  bool forbidden_complete = false;

  std::size_t size() const { return next.size(); }
  int run(const std::vector<int>& w, int from) const;  // -1 on rejection
  bool accepts(const std::vector<int>& w) const { return run(w, start) >= 0; }
  // every finite prefix of the infinite word is accepted
  bool accepts(const Word& u) const;
};

ShiftAutomaton build_automaton(const BetaTransform& t, std::size_t max_states = 20000,
                               std::size_t max_words = 2000000);

// z = x - x' in Z[beta] for which T_x and T_x' may intersect
std::vector<QBeta> difference_candidates(const Gifs& g, int depth);

struct DiffState {
  QBeta delta;  // x_k - x'_k
  int v = 0, w = 0;  // GIFS vertices of the input and output side
};

struct DiffEdge {
  int from = 0, to = 0;
  int a = 0, b = 0;  // input | output digit indices
};

// Product of two copies of the GIFS with exact differences (x + a - x' - a') / beta.
struct DiffTransducer {
  std::vector<DiffState> states;
  std::vector<DiffEdge> edges;
  std::vector<std::vector<int>> out;  // edge indices by source state
  std::vector<int> initial;
  int find(const QBeta& delta, int v, int w) const;
};

DiffTransducer build_transducer(const Gifs& g, const std::vector<QBeta>& candidates, int prune_depth = 10,
                                std::size_t max_states = 2000000);

struct SccInfo {
  std::vector<int> states;
  ZPoly charpoly;
  bool beta_eigen = false;
  double radius_lo = 0.0, radius_hi = 0.0;  // Collatz-Wielandt bounds of the spectral radius
};

struct TilingDecision {
  bool tiling = false;
  std::vector<DiffState> pairs;   // initial states that reach a beta-eigenvalue component
  std::vector<QBeta> differences;  // distinct deltas of pairs, sorted
  std::vector<SccInfo> sccs;       // nontrivial components
  std::size_t candidates = 0;
  DiffTransducer transducer;
};

TilingDecision decide_tiling(const Gifs& g, int prune_depth = 10, std::size_t max_states = 2000000);

// exact characteristic polynomial det(xI - A) of an integer matrix
ZPoly charpoly(const std::vector<std::vector<long>>& a);

std::string automaton_dot(const BetaTransform& t, const ShiftAutomaton& a);
std::string transducer_dot(const BetaTransform& t, const DiffTransducer& d);
std::string digit_label(const BetaTransform& t, int digit);

}  // namespace betatile
