#pragma once

// Per-round checks on LocalFlow, fed by its observer hook.

#include <cstdint>
#include <string>
#include <vector>

#include "vcut/local_flow.hpp"

namespace vcut::testkit {

struct RoundCheckStats {
  std::size_t rounds = 0;
  std::size_t coincidence_mismatches = 0;
  std::size_t layer_violations = 0;
  std::size_t size_violations = 0;
  std::size_t distance_violations = 0;
  std::size_t infeasible_states = 0;
  // Diagnostics beyond the literal statements:
  // d(t) recomputed with the round's own B (only the flow changed).
  std::size_t distance_violations_fixed_b = 0;
  // m' <= 3(nu/eps + nu + 1) + 2 and n' <= 2(nu/eps + nu + 1) + 3, which is
  // what the counting behind the size lemma actually supports.
  std::size_t size_violations_corrected = 0;
  std::size_t distance_decreases = 0;  // d(t) dropped within one phase
  std::vector<std::string> notes;  // first few failures, for diagnostics

  std::size_t violations() const {
    return coincidence_mismatches + layer_violations + size_violations + distance_violations + infeasible_states;
  }
  void merge(const RoundCheckStats& other);
};

/// Observer that compares every round against the explicit G' and checks
/// the structural lemmas. Keep the object alive for the whole local_flow
/// call; call finish() afterwards.
class RoundChecker {
 public:
  RoundChecker(const DiGraph& g, const LocalVcParams& p, bool explicit_checks);

  RoundObserver observer();
  /// Closes the d(t) bookkeeping for the last round.
  RoundCheckStats finish();

 private:
  void check(const RoundTrace& trace);
  void note(const std::string& what);

  const DiGraph* graph_;
  LocalVcParams params_;
  bool explicit_checks_;
  RoundCheckStats stats_;
  bool have_previous_ = false;
  int previous_outer_ = 0;
  std::int64_t previous_d_ = 0;
  bool previous_blocking_ = false;
};

}  // namespace vcut::testkit
