#pragma once

#include "bcn/feedback.hpp"

namespace bcn {

struct AttractorReport {
  bool is_global_attractor = false;
  std::optional<Index> horizon;  // present iff the set attracts globally
  std::optional<std::vector<Index>> violating_cycle;  // present otherwise
};

struct ReconstructibilityWitness {
  std::pair<Index, Index> states;  // a pair that stays indistinguishable
  std::vector<Index> input_cycle;  // inputs cycling the pair forever
};

struct ReconstructibilityReport {
  bool reconstructible = false;
  std::optional<Index> horizon;
  std::optional<ReconstructibilityWitness> witness;
};

/// All states with successor(i) = i.
StateSet fixed_points(const Bn& net);

/// Every cycle of the functional graph exactly once, each rotated to start
/// at its smallest state and listed in order of that smallest state.
/// Fixed points appear as length-1 cycles.
std::vector<std::vector<Index>> limit_cycles(const Bn& net);

/// A set attracts globally exactly when every cycle state belongs to it
/// (the row support of high transition powers is the union of the cycles).
/// On success the horizon is the least T after which every trajectory has
/// entered the set for good; on failure the violating cycle with the
/// smallest member is reported.
AttractorReport is_global_attractor(const Bn& net, const StateSet& target);

/// The horizon of a certified global attractor; throws DomainError when
/// the set does not attract.
Index absorption_horizon(const Bn& net, const StateSet& target);

/// Pair-graph reconstructibility for a standard-form network (state-only
/// output map). Nodes are unordered state pairs with equal output; the
/// network is reconstructible iff the graph is acyclic, with the horizon
/// bounded by the longest path length + 1.
ReconstructibilityReport reconstructibility(const Bcn& net);

/// The case-study style verdicts: a diagnosis variable on each side plus
/// the value correspondence that defines a correct diagnosis, and the
/// value pair that defines the healthy target.
struct DiagnosisSpec {
  std::string plant_var;
  std::string context_var;
  std::map<std::string, std::string> correspondence;
  std::string healthy_plant_value;
  std::string healthy_context_value;
};

/// Is the correct-diagnosis set (agreement of the two diagnosis variables)
/// a global attractor of the closed loop?
AttractorReport verify_correct_diagnosis(const ClosedLoop& loop,
                                         const DiagnosisSpec& spec);

/// Is the healthy-and-correctly-diagnosed set a global attractor? Also
/// checks that it is contained in the correct-diagnosis set.
AttractorReport verify_successful_therapy(const ClosedLoop& loop,
                                          const DiagnosisSpec& spec);

/// The correct-diagnosis set, derived from the comparison matrix.
StateSet correct_diagnosis_set(const ClosedLoop& loop,
                               const DiagnosisSpec& spec);
StateSet healthy_set(const ClosedLoop& loop, const DiagnosisSpec& spec);

}  // namespace bcn
