#pragma once

#include <iosfwd>
#include <vector>

#include "imatch/market.hpp"

namespace imatch {

enum class Outcome : std::uint8_t { Accepted, Rejected };

/// One step of a deferred-acceptance run.
///
/// Rounds are synchronous and numbered from 1: every active proposer acts,
/// then every receiver chooses. A proposal that the receiver holds at the end
/// of its round is logged Accepted, otherwise Rejected. When a receiver drops
/// an offer it held from an earlier round, that pair is logged Rejected in
/// the round where it is dropped.
struct TraceEvent {
  int round;
  Side proposer_side;
  int proposer;
  int proposee;
  Outcome outcome;

  bool operator==(const TraceEvent&) const = default;
};

using Trace = std::vector<TraceEvent>;

/// Hospital-proposing many-to-many deferred acceptance (interview stage).
///
/// Each round, every hospital offers interviews to its best not-yet-asked
/// acceptable doctors, as many as it has unfilled slots. Every doctor then
/// keeps the `doctor_cap` best of her held and new offers via `choose`.
/// Runs until no hospital can propose. The result is the hospital-optimal
/// pairwise stable interview matching.
InterviewMatching interview_da(const Market& market, const Arrangement& arrangement,
                               Trace* trace = nullptr);

/// Doctor-proposing one-to-one deferred acceptance; returns the
/// doctor-optimal stable matching of `market`.
Matching doctor_da(const Market& market, Trace* trace = nullptr);

// Rebuild an engine's output from its trace alone.
InterviewMatching replay_interviews(const Trace& trace, int n_doctors, int n_hospitals);
Matching replay_matching(const Trace& trace, int n_doctors, int n_hospitals);

// CSV with header: round,proposer_side,proposer,proposee,outcome
void write_trace_csv(std::ostream& out, const Trace& trace);

struct TwoStepOutcome {
  InterviewMatching interviews;
  Matching matching;
};

/// Interview stage followed by doctor-proposing DA on the profile restricted
/// to the interviews: the final matching of `arrangement` at `market`.
TwoStepOutcome run_two_step(const Market& market, const Arrangement& arrangement);

}  // namespace imatch
