#include "imatch/engines.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "imatch/choice.hpp"
#include "imatch/errors.hpp"

namespace imatch {

namespace {

void log(Trace* trace, int round, Side side, int proposer, int proposee, Outcome outcome) {
  if (trace) trace->push_back({round, side, proposer, proposee, outcome});
}

}  // namespace

InterviewMatching interview_da(const Market& market, const Arrangement& arrangement, Trace* trace) {
  arrangement.check_dimensions(market);
  const auto n_d = static_cast<std::size_t>(market.n_doctors());
  const auto n_h = static_cast<std::size_t>(market.n_hospitals());

  std::vector<std::size_t> next(n_h, 0);     // position in each hospital's acceptable list
  std::vector<int> filled(n_h, 0);           // tentatively accepted offers per hospital
  std::vector<std::vector<int>> held(n_d);   // per doctor, best first
  std::vector<std::vector<int>> offers(n_d);
  std::vector<int> touched;
  std::vector<int> kept_stamp(n_h, -1);
  std::vector<int> candidates;

  for (int round = 1;; ++round) {
    touched.clear();
    for (std::size_t h = 0; h < n_h; ++h) {
      const auto list = market.hospital(static_cast<int>(h)).acceptable();
      int free = arrangement.hospital_cap(static_cast<int>(h)) - filled[h];
      while (free > 0 && next[h] < list.size()) {
        const int d = list[next[h]++];
        auto& inbox = offers[static_cast<std::size_t>(d)];
        if (inbox.empty()) touched.push_back(d);
        inbox.push_back(static_cast<int>(h));
        --free;
      }
    }
    if (touched.empty()) break;
    std::ranges::sort(touched);

    for (int d : touched) {
      const auto du = static_cast<std::size_t>(d);
      auto& inbox = offers[du];
      auto& current = held[du];
      candidates.assign(current.begin(), current.end());
      candidates.insert(candidates.end(), inbox.begin(), inbox.end());
      auto kept = choose(market, AgentId::doctor(d), candidates, arrangement.doctor_cap(d));

      const int stamp = round * market.n_doctors() + d;
      for (int h : kept) kept_stamp[static_cast<std::size_t>(h)] = stamp;
      for (int h : inbox) {
        if (kept_stamp[static_cast<std::size_t>(h)] == stamp) {
          ++filled[static_cast<std::size_t>(h)];
          log(trace, round, Side::Hospital, h, d, Outcome::Accepted);
        } else {
          log(trace, round, Side::Hospital, h, d, Outcome::Rejected);
        }
      }
      for (int h : current) {
        if (kept_stamp[static_cast<std::size_t>(h)] != stamp) {
          --filled[static_cast<std::size_t>(h)];
          log(trace, round, Side::Hospital, h, d, Outcome::Rejected);
        }
      }
      current = std::move(kept);
      inbox.clear();
    }
  }

  std::vector<std::pair<int, int>> pairs;
  for (std::size_t d = 0; d < n_d; ++d) {
    for (int h : held[d]) pairs.emplace_back(static_cast<int>(d), h);
  }
  return InterviewMatching(market.n_doctors(), market.n_hospitals(), pairs);
}

Matching doctor_da(const Market& market, Trace* trace) {
  const auto n_d = static_cast<std::size_t>(market.n_doctors());
  const auto n_h = static_cast<std::size_t>(market.n_hospitals());

  std::vector<std::size_t> next(n_d, 0);
  std::vector<bool> engaged(n_d, false);
  std::vector<std::optional<int>> holder(n_h);
  std::vector<std::vector<int>> proposals(n_h);
  std::vector<int> touched;
  std::vector<int> candidates;

  for (int round = 1;; ++round) {
    touched.clear();
    for (std::size_t d = 0; d < n_d; ++d) {
      if (engaged[d]) continue;
      const auto list = market.doctor(static_cast<int>(d)).acceptable();
      if (next[d] >= list.size()) continue;
      const int h = list[next[d]++];
      auto& inbox = proposals[static_cast<std::size_t>(h)];
      if (inbox.empty()) touched.push_back(h);
      inbox.push_back(static_cast<int>(d));
    }
    if (touched.empty()) break;
    std::ranges::sort(touched);

    for (int h : touched) {
      const auto hu = static_cast<std::size_t>(h);
      auto& inbox = proposals[hu];
      candidates.assign(inbox.begin(), inbox.end());
      const auto previous = holder[hu];
      if (previous) candidates.push_back(*previous);
      const auto best = choose(market, AgentId::hospital(h), candidates, 1);
      const std::optional<int> winner = best.empty() ? std::nullopt : std::optional<int>(best.front());

      for (int d : inbox) {
        const bool won = winner == d;
        engaged[static_cast<std::size_t>(d)] = won;
        log(trace, round, Side::Doctor, d, h, won ? Outcome::Accepted : Outcome::Rejected);
      }
      if (previous && winner != previous) {
        engaged[static_cast<std::size_t>(*previous)] = false;
        log(trace, round, Side::Doctor, *previous, h, Outcome::Rejected);
      }
      holder[hu] = winner;
      inbox.clear();
    }
  }

  std::vector<std::pair<int, int>> pairs;
  for (std::size_t h = 0; h < n_h; ++h) {
    if (holder[h]) pairs.emplace_back(*holder[h], static_cast<int>(h));
  }
  return Matching(market.n_doctors(), market.n_hospitals(), pairs);
}

namespace {

// Applies accepted/rejected events to a (doctor, hospital) pair set.
std::vector<std::pair<int, int>> replay_pairs(const Trace& trace) {
  std::set<std::pair<int, int>> live;
  for (const auto& e : trace) {
    const auto pair = e.proposer_side == Side::Doctor ? std::pair{e.proposer, e.proposee}
                                                      : std::pair{e.proposee, e.proposer};
    if (e.outcome == Outcome::Accepted) {
      live.insert(pair);
    } else {
      live.erase(pair);
    }
  }
  return {live.begin(), live.end()};
}

}  // namespace

InterviewMatching replay_interviews(const Trace& trace, int n_doctors, int n_hospitals) {
  const auto pairs = replay_pairs(trace);
  return InterviewMatching(n_doctors, n_hospitals, pairs);
}

Matching replay_matching(const Trace& trace, int n_doctors, int n_hospitals) {
  const auto pairs = replay_pairs(trace);
  return Matching(n_doctors, n_hospitals, pairs);
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << "round,proposer_side,proposer,proposee,outcome\n";
  for (const auto& e : trace) {
    out << e.round << ',' << to_string(e.proposer_side) << ',' << e.proposer << ',' << e.proposee
        << ',' << (e.outcome == Outcome::Accepted ? "accepted" : "rejected") << '\n';
  }
}

TwoStepOutcome run_two_step(const Market& market, const Arrangement& arrangement) {
  auto interviews = interview_da(market, arrangement);
  auto matching = doctor_da(restrict_profile(market, interviews));
  return {std::move(interviews), std::move(matching)};
}

}  // namespace imatch
