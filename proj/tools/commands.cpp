#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "imatch/engines.hpp"
#include "imatch/errors.hpp"
#include "imatch/experiments.hpp"
#include "imatch/fixtures.hpp"
#include "imatch/market_io.hpp"
#include "imatch/prefgen.hpp"
#include "imatch/stability.hpp"
#include "imatch/theory.hpp"

namespace imatch::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Unwritable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  int doctors = 470;
  int hospitals = 400;
  double beta = 40.0;
  double gamma = 20.0;
  int l = 25;
  int k_min = 1;
  int k_max = 100;
  int k_cap = 5;
  int l_min = 1;
  int l_max = 25;
  int reps = 100;
  std::uint64_t seed = kDefaultSeed;
  std::string threads = "auto";
  std::string out = ".";
  std::string config;
  int grid = 12;
  int max_cap = 0;  // 0: same as grid
  bool json = false;
  std::string market_file;
  std::string trace_file;
  std::vector<int> hospital_caps;
  std::vector<int> doctor_caps;

  GenParams gen() const { return {beta, gamma, doctors, hospitals, seed}; }

  int thread_count() const {
    if (threads == "auto") return 0;
    try {
      std::size_t used = 0;
      const int n = std::stoi(threads, &used);
      if (used == threads.size() && n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw UsageError("--threads must be a positive integer or 'auto'");
  }
};

// --- option registration --------------------------------------------------------

void add_market_flags(CLI::App* sub, Options& o) {
  sub->add_option("--doctors", o.doctors, "Number of doctors")->capture_default_str();
  sub->add_option("--hospitals", o.hospitals, "Number of hospitals")->capture_default_str();
  sub->add_option("--beta", o.beta, "Weight on common quality")->capture_default_str();
  sub->add_option("--gamma", o.gamma, "Weight on fit distance")->capture_default_str();
  sub->add_option("--seed", o.seed, "Master seed")->capture_default_str();
}

void add_run_flags(CLI::App* sub, Options& o) {
  sub->add_option("--reps", o.reps, "Replications (one market each)")->capture_default_str();
  sub->add_option("--threads", o.threads, "Worker threads: N or auto")->capture_default_str();
  sub->add_option("--out", o.out, "Output directory")->capture_default_str();
  sub->add_option("--config", o.config, "key = value file; command-line flags win");
}

// Fills options that were not given on the command line from --config.
void apply_config(CLI::App* sub, const std::string& path) {
  if (path.empty()) return;
  if (!fs::exists(path)) throw UsageError("config file not found: " + path);
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_file(path);
  } catch (const CLI::Error& e) {
    throw UsageError(std::string("cannot parse config: ") + e.what());
  }
  for (const auto& item : items) {
    if (item.name == "++" || item.name == "--") continue;  // section markers
    auto* opt = sub->get_option_no_throw("--" + item.name);
    if (opt == nullptr || item.name == "config") {
      throw UsageError("unknown config key '" + item.name + "' for " + sub->get_name());
    }
    if (opt->count() > 0) continue;
    for (const auto& value : item.inputs) opt->add_result(value);
    try {
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw UsageError("config key '" + item.name + "': " + e.what());
    }
  }
}

// --- output helpers ----------------------------------------------------------------

template <typename Write>
void write_file(const fs::path& dir, const std::string& name, std::size_t rows, std::ostream& out,
                Write&& write) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const auto path = dir / name;
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Unwritable("cannot write " + path.string());
  write(file);
  file.flush();
  if (!file) throw Unwritable("failed writing " + path.string());
  out << "wrote " << path.string() << " (" << rows << " rows)\n";
}

std::string label(Side side, int index) {
  return (side == Side::Doctor ? "d" : "h") + std::to_string(index + 1);
}

std::string describe_interviews(const InterviewMatching& nu) {
  std::ostringstream s;
  for (int d = 0; d < nu.n_doctors(); ++d) {
    s << (d ? " " : "") << label(Side::Doctor, d) << ":{";
    const auto& set = nu.of_doctor(d);
    for (std::size_t i = 0; i < set.size(); ++i) s << (i ? "," : "") << label(Side::Hospital, set[i]);
    s << '}';
  }
  return s.str();
}

std::string describe_matching(const Matching& mu) {
  std::ostringstream s;
  for (int d = 0; d < mu.n_doctors(); ++d) {
    const auto h = mu.of_doctor(d);
    s << (d ? " " : "") << label(Side::Doctor, d) << '-' << (h ? label(Side::Hospital, *h) : "none");
  }
  return s.str();
}

std::string describe_pairs(const BlockReport& report) {
  std::ostringstream s;
  for (std::size_t i = 0; i < report.pairs.size(); ++i) {
    s << (i ? " " : "") << '(' << label(Side::Doctor, report.pairs[i].first) << ','
      << label(Side::Hospital, report.pairs[i].second) << ')';
  }
  return s.str();
}

json outcome_json(const Arrangement& arrangement, const TwoStepOutcome& outcome,
                  const BlockReport& report) {
  json j;
  j["hospital_caps"] = arrangement.hospital_caps();
  j["doctor_caps"] = arrangement.doctor_caps();
  j["interviews"] = json::parse(interviews_to_json(outcome.interviews));
  j["matching"] = json::parse(matching_to_json(outcome.matching));
  j["blocking_pairs"] = report.pairs;
  j["stable"] = report.count() == 0;
  return j;
}

json tally_json(const WelfareTally& t) {
  return {{"prefer_before", t.prefers_a}, {"prefer_after", t.prefers_b}, {"same", t.same}};
}

// --- commands -----------------------------------------------------------------------

int cmd_demo(const Options& o, std::ostream& out) {
  const auto market = fixtures::hoarding_market();
  const auto before_arr = fixtures::hoarding_before();
  const auto after_arr = fixtures::hoarding_after();
  const auto before = run_two_step(market, before_arr);
  const auto after = run_two_step(market, after_arr);
  const auto before_blocks = blocking_pairs(before.matching, market);
  const auto after_blocks = blocking_pairs(after.matching, market);
  const auto doctors = compare_welfare(before.matching, after.matching, market, Side::Doctor);
  const auto hospitals = compare_welfare(before.matching, after.matching, market, Side::Hospital);

  const bool reproduced = before.interviews == fixtures::hoarding_interviews_before() &&
                          after.interviews == fixtures::hoarding_interviews_after() &&
                          before.matching == fixtures::hoarding_matching_before() &&
                          after.matching == fixtures::hoarding_matching_after() &&
                          before_blocks.count() == 0 && after_blocks.count() > 0;

  if (o.json) {
    json j;
    j["market"] = json::parse(market_to_json(market));
    j["before"] = outcome_json(before_arr, before, before_blocks);
    j["after"] = outcome_json(after_arr, after, after_blocks);
    j["welfare"] = {{"doctors", tally_json(doctors)}, {"hospitals", tally_json(hospitals)}};
    j["reproduced"] = reproduced;
    out << j.dump(2) << '\n';
  } else {
    auto section = [&](const char* title, const Arrangement& arr, const TwoStepOutcome& outcome,
                       const BlockReport& blocks) {
      out << title << ": doctor caps";
      for (int c : arr.doctor_caps()) out << ' ' << c;
      out << ", hospital caps";
      for (int c : arr.hospital_caps()) out << ' ' << c;
      out << "\n  interviews: " << describe_interviews(outcome.interviews)
          << "\n  matching:   " << describe_matching(outcome.matching)
          << "\n  blocking pairs: " << blocks.count();
      if (blocks.count() > 0) out << ' ' << describe_pairs(blocks);
      out << (blocks.count() == 0 ? " (stable)" : " (unstable)") << '\n';
    };
    section("before", before_arr, before, before_blocks);
    section("after", after_arr, after, after_blocks);
    out << "doctors:   prefer before " << doctors.prefers_a << ", prefer after " << doctors.prefers_b
        << ", same " << doctors.same << '\n';
    out << "hospitals: prefer before " << hospitals.prefers_a << ", prefer after "
        << hospitals.prefers_b << ", same " << hospitals.same << '\n';
    out << (reproduced ? "result: reproduced\n" : "result: MISMATCH\n");
  }
  return reproduced ? kExitOk : kExitMismatch;
}

int cmd_run(const Options& o, std::ostream& out) {
  Market market = [&] {
    try {
      return load_market(o.market_file);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }();
  const bool homogeneous = o.hospital_caps.empty() && o.doctor_caps.empty();
  if (!homogeneous && (o.hospital_caps.empty() || o.doctor_caps.empty())) {
    throw UsageError("--hospital-caps and --doctor-caps must be given together");
  }
  const Arrangement arrangement = [&] {
    try {
      Arrangement a = homogeneous ? Arrangement::homogeneous(market, o.l, o.k_min)
                                  : Arrangement(o.hospital_caps, o.doctor_caps);
      a.check_dimensions(market);
      return a;
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  Trace trace;
  auto interviews = interview_da(market, arrangement, &trace);
  auto matching = doctor_da(restrict_profile(market, interviews));
  const TwoStepOutcome outcome{std::move(interviews), std::move(matching)};
  const auto blocks = blocking_pairs(outcome.matching, market);
  auto j = outcome_json(arrangement, outcome, blocks);
  j["match_rate"] = match_rate(outcome.matching, market);
  out << j.dump(2) << '\n';
  if (!o.trace_file.empty()) {
    const fs::path path(o.trace_file);
    write_file(path.has_parent_path() ? path.parent_path() : fs::path("."),
               path.filename().string(), trace.size(), out,
               [&](std::ostream& f) { write_trace_csv(f, trace); });
  }
  return kExitOk;
}

int cmd_sample(const Options& o, std::ostream& out) {
  const auto sampled = sample_market(o.gen());
  write_file(o.out, "market.json", 1, out,
             [&](std::ostream& f) { f << market_to_json(sampled.market) << '\n'; });
  write_file(o.out, "latent.csv", static_cast<std::size_t>(o.doctors + o.hospitals), out,
             [&](std::ostream& f) { write_latent_csv(f, sampled.latent); });
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  SweepConfig config;
  config.gen = o.gen();
  config.l = o.l;
  config.k_min = o.k_min;
  config.k_max = o.k_max;
  config.replications = o.reps;
  config.k_policy = o.k_cap;
  config.threads = o.thread_count();
  const auto rows = sweep_k(config);
  const auto agg = aggregate(rows);
  write_file(o.out, "sweep.csv", rows.size(), out, [&](std::ostream& f) { write_sweep_csv(f, rows); });
  write_file(o.out, "sweep_agg.csv", agg.size(), out,
             [&](std::ostream& f) { write_sweep_agg_csv(f, agg); });
  const auto best_rate = std::ranges::max_element(
      agg, [](const auto& a, const auto& b) { return a.mean_match_rate < b.mean_match_rate; });
  const auto best_block = std::ranges::min_element(
      agg, [](const auto& a, const auto& b) { return a.mean_blocking_pairs < b.mean_blocking_pairs; });
  out << "peak mean match rate " << best_rate->mean_match_rate << " at k=" << best_rate->k
      << "; fewest mean blocking pairs " << best_block->mean_blocking_pairs << " at k="
      << best_block->k << '\n';
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const auto result = compare_policies(o.gen(), o.l, o.k_cap, o.reps, o.thread_count());
  write_file(o.out, "compare.csv", result.rows.size(), out,
             [&](std::ostream& f) { write_compare_csv(f, result.rows); });
  write_file(o.out, "hist.csv", result.histogram.size(), out,
             [&](std::ostream& f) { write_hist_csv(f, result.histogram); });
  return kExitOk;
}

int cmd_ideal(const Options& o, std::ostream& out) {
  const auto rows = ideal_comparison(o.gen(), o.l, o.k_cap, o.reps, o.thread_count());
  write_file(o.out, "ideal.csv", rows.size(), out, [&](std::ostream& f) { write_ideal_csv(f, rows); });
  return kExitOk;
}

int cmd_heatmap(const Options& o, std::ostream& out) {
  const auto cells = heatmap_lk(o.gen(), {o.l_min, o.l_max}, {o.k_min, o.k_max}, o.reps,
                                o.thread_count());
  write_file(o.out, "heatmap.csv", cells.size(), out,
             [&](std::ostream& f) { write_heatmap_csv(f, cells); });
  return kExitOk;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  const int max_cap = o.max_cap > 0 ? o.max_cap : o.grid;
  const auto rows = oracle_grid(o.grid, max_cap, o.thread_count());
  write_file(o.out, "oracle.csv", rows.size(), out, [&](std::ostream& f) { write_oracle_csv(f, rows); });
  const auto s = summarize(rows);
  out << "stated form mismatches: matched k>l " << s.matched_mismatch_k_gt_l << ", matched k<l "
      << s.matched_mismatch_k_lt_l << ", blocking k>l " << s.blocking_mismatch_k_gt_l
      << ", blocking k<l " << s.blocking_mismatch_k_lt_l << '\n';
  out << "exact form mismatches: " << s.exact_mismatch << "; adequacy characterization mismatches: "
      << s.adequacy_mismatch << " (of " << s.rows << " cells)\n";
  return kExitOk;
}

void validate(const Options& o, const std::string& command) {
  auto require = [](bool ok, const char* message) {
    if (!ok) throw UsageError(message);
  };
  if (command == "demo" || command == "oracle" || command == "run") {
    if (command == "oracle") {
      require(o.grid >= 2, "--grid must be >= 2");
      require(o.max_cap >= 0, "--max-cap must be >= 1");
    }
    return;
  }
  require(o.doctors >= 2 && o.hospitals >= 2, "--doctors and --hospitals must be >= 2");
  require(o.beta >= 0 && o.gamma >= 0, "--beta and --gamma must be >= 0");
  require(o.reps >= 1, "--reps must be >= 1");
  require(o.l >= 1, "--l must be >= 1");
  require(o.k_cap >= 1, "--k-cap must be >= 1");
  require(o.k_min >= 1 && o.k_min <= o.k_max, "need 1 <= --k-min <= --k-max");
  if (command == "heatmap") require(o.l_min >= 1 && o.l_min <= o.l_max, "need 1 <= --l-min <= --l-max");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interview-then-match market simulator"};
  app.name("imatch");
  app.require_subcommand(1);
  Options o;

  auto* demo = app.add_subcommand("demo", "Run the four-doctor interview hoarding example");
  demo->add_flag("--json", o.json, "Machine-readable output");

  auto* run_cmd = app.add_subcommand("run", "Two-step pipeline on a market JSON file");
  run_cmd->add_option("--market", o.market_file, "Market JSON")->required();
  run_cmd->add_option("--l", o.l, "Hospital interview cap")->capture_default_str();
  run_cmd->add_option("--k", o.k_min, "Doctor interview cap")->capture_default_str();
  run_cmd->add_option("--hospital-caps", o.hospital_caps, "Per-hospital caps");
  run_cmd->add_option("--doctor-caps", o.doctor_caps, "Per-doctor caps");
  run_cmd->add_option("--trace", o.trace_file, "Write the interview-stage trace CSV here");

  auto* sample = app.add_subcommand("sample", "Write one generated market and its latent draws");
  add_market_flags(sample, o);
  sample->add_option("--out", o.out, "Output directory")->capture_default_str();
  sample->add_option("--threads", o.threads, "Accepted for uniformity; sampling is serial")
      ->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Vary the doctor cap k with l fixed");
  add_market_flags(sweep, o);
  add_run_flags(sweep, o);
  sweep->add_option("--l", o.l, "Hospital interview cap")->capture_default_str();
  sweep->add_option("--k-min", o.k_min)->capture_default_str();
  sweep->add_option("--k-max", o.k_max)->capture_default_str();
  sweep->add_option("--k-cap", o.k_cap, "Policy cap (recorded only)")->capture_default_str();

  auto* compare = app.add_subcommand("compare", "Capped doctors vs. unconstrained doctors");
  add_market_flags(compare, o);
  add_run_flags(compare, o);
  compare->add_option("--l", o.l)->capture_default_str();
  compare->add_option("--k-cap", o.k_cap)->capture_default_str();

  auto* ideal = app.add_subcommand("ideal", "Capped pipeline vs. matching without interviews");
  add_market_flags(ideal, o);
  add_run_flags(ideal, o);
  ideal->add_option("--l", o.l)->capture_default_str();
  ideal->add_option("--k-cap", o.k_cap)->capture_default_str();

  auto* heatmap = app.add_subcommand("heatmap", "Mean match rate over an l x k grid");
  add_market_flags(heatmap, o);
  add_run_flags(heatmap, o);
  heatmap->add_option("--l-min", o.l_min)->capture_default_str();
  heatmap->add_option("--l-max", o.l_max)->capture_default_str();
  heatmap->add_option("--k-min", o.k_min)->capture_default_str();
  heatmap->add_option("--k-max", o.k_max)->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "Closed forms vs. pipeline on common markets");
  oracle->add_option("--grid", o.grid, "Largest market side")->capture_default_str();
  oracle->add_option("--max-cap", o.max_cap, "Largest l and k (default: grid)");
  oracle->add_option("--threads", o.threads)->capture_default_str();
  oracle->add_option("--out", o.out)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  try {
    apply_config(chosen, o.config);
    validate(o, command);
    if (command == "demo") return cmd_demo(o, out);
    if (command == "run") return cmd_run(o, out);
    if (command == "sample") return cmd_sample(o, out);
    if (command == "sweep") return cmd_sweep(o, out);
    if (command == "compare") return cmd_compare(o, out);
    if (command == "ideal") return cmd_ideal(o, out);
    if (command == "heatmap") return cmd_heatmap(o, out);
    if (command == "oracle") return cmd_oracle(o, out);
  } catch (const UsageError& e) {
    err << "imatch " << command << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const Unwritable& e) {
    err << "imatch " << command << ": " << e.what() << '\n';
    return kExitUnwritable;
  }
  return kExitUsage;
}

}  // namespace imatch::cli
