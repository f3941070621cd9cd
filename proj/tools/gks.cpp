// gks -- strategies for the one-bit-at-a-time board game.
//
// Subcommands: verify, selftest, simulate, play, search, exponent.
// Exit codes: 0 success/PASS, 1 verification failure, 2 usage error,
// 3 budget exceeded. All positions in input and output are 1-based.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "gks/block_strategy.hpp"
#include "gks/code_table.hpp"
#include "gks/composer.hpp"
#include "gks/descriptor.hpp"
#include "gks/search.hpp"
#include "gks/simulate.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

// Seed for "auto" delegation in interactive play; constant so scripted
// sessions replay identically.
constexpr std::uint64_t kAutoPlaySeed = 0xA11CE;

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

// ---------------------------------------------------------------- verify --

int run_verify(const std::string& file, bool as_json) {
  gks::CodeTable table = gks::load_table_file(file);
  const gks::TableReport report = gks::verify_table(table);

  bool structural_applicable = table.u() < table.m() && report.pass();
  gks::VerifyReport structural;
  if (structural_applicable) {
    structural = gks::structural_verify_block(
        std::make_shared<const gks::CodeTable>(std::move(table)));
  }
  const bool pass = report.pass() && (!structural_applicable || structural.pass);

  if (as_json) {
    nlohmann::json j = {
        {"file", file},
        {"rows", report.rows},
        {"expected_rows", report.expected_rows},
        {"coverage_pass", report.coverage_pass},
        {"disjointness_pass", report.disjointness_pass},
        {"ball_members", report.ball_members},
        {"violations", report.violations},
        {"pass", pass},
    };
    if (structural_applicable) {
      j["block_structural"] = {{"pass", structural.pass},
                               {"games", structural.games},
                               {"max_set_size", structural.max_set_size},
                               {"failures", structural.failures}};
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "table: " << file << "\n";
    std::cout << "rows: " << report.rows << " (expected " << report.expected_rows
              << ")\n";
    std::cout << "coverage: " << (report.coverage_pass ? "PASS" : "FAIL") << "\n";
    std::cout << "disjointness: " << (report.disjointness_pass ? "PASS" : "FAIL")
              << " (" << report.ball_members << " distinct ball members)\n";
    for (const std::string& v : report.violations) std::cout << "violation: " << v << "\n";
    if (structural_applicable) {
      std::cout << "block structural: " << (structural.pass ? "PASS" : "FAIL") << " ("
                << structural.games << " games, max set size "
                << structural.max_set_size << ")\n";
      for (const std::string& f : structural.failures) {
        std::cout << "failure: " << f << "\n";
      }
    }
    std::cout << "verdict: " << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? kExitPass : kExitVerifyFail;
}

// -------------------------------------------------------------- selftest --

int run_selftest(const std::string& level) {
  const bool full = level == "full";
  bool all_pass = true;

  auto check = [&](const std::string& name, auto&& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      detail = body();
      ok = true;
    } catch (const std::exception& e) {
      detail = e.what();
    }
    std::cout << (ok ? "ok   " : "FAIL ") << name << " (" << ms_since(start) << " ms)"
              << (detail.empty() ? "" : ": " + detail) << "\n";
    all_pass = all_pass && ok;
  };
  auto expect = [](bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error(what);
  };

  const auto table = gks::canonical_table();

  check("table", [&] {
    const gks::TableReport r = gks::verify_table(*table);
    expect(r.pass(), "canonical table fails verification");
    return std::to_string(r.rows) + " rows, " + std::to_string(r.ball_members) +
           " ball members";
  });

  const int flood_max = full ? 8 : 6;
  check("flood exhaustive", [&] {
    std::uint64_t games = 0;
    for (int n = 1; n <= flood_max; ++n) {
      const gks::VerifyReport r = gks::verify_exhaustive(*gks::flood_strategy(n));
      expect(r.pass, "flood(" + std::to_string(n) + ") loses a game");
      games += r.games;
    }
    return std::to_string(games) + " games, n <= " + std::to_string(flood_max);
  });

  check("flood transmit", [&] {
    const gks::VerifyReport r =
        gks::verify_augmented(*gks::flood_strategy(7), gks::Probe::exhaustive());
    expect(r.pass, "flood(7) drops the transmitted bit");
    return std::to_string(r.games) + " games";
  });

  check("block transmit", [&] {
    const auto probe = gks::Probe::sampled(full ? 1000 : 200, 17);
    const gks::VerifyReport r =
        gks::verify_augmented(*gks::code_block_strategy(table), probe);
    expect(r.pass, "block strategy drops the transmitted bit");
    return std::to_string(r.games) + " games";
  });

  check("block structural", [&] {
    const gks::VerifyReport r =
        gks::structural_verify_block(table, full ? 10000 : 1000, 23);
    expect(r.pass, r.failures.empty() ? "fails" : r.failures.front());
    return std::to_string(r.games) + " games, max set size " +
           std::to_string(r.max_set_size);
  });

  check("composed worst case", [&] {
    const auto strategy = gks::theorem2_strategy(table);
    const gks::MeasuredK m = gks::measured_k(*strategy, gks::Probe::structural());
    expect(m.exact && m.k == strategy->config().k,
           "worst case " + std::to_string(m.k) + " != declared " +
               std::to_string(strategy->config().k));
    return std::to_string(m.games) + " games, worst case " + std::to_string(m.k);
  });

  if (full) {
    check("composed random batch", [&] {
      const auto strategy = gks::theorem2_strategy(table);
      const gks::BatchReport r = gks::simulate_batch(
          strategy, strategy->describe(), gks::AdversaryModel::Random, 10000, 41);
      expect(r.wins == r.trials, std::to_string(r.trials - r.wins) + " losses");
      expect(r.max_set_size == strategy->config().k, "unexpected set size");
      return std::to_string(r.wins) + "/" + std::to_string(r.trials) + " wins";
    });
  }

  std::cout << "selftest: " << (all_pass ? "PASS" : "FAIL") << "\n";
  return all_pass ? kExitPass : kExitVerifyFail;
}

// -------------------------------------------------------------- simulate --

int run_simulate(const std::string& descriptor, std::uint64_t trials,
                 std::uint64_t seed, const std::string& adversary, bool as_json) {
  const gks::StrategyPtr strategy = gks::parse_strategy(descriptor);
  const gks::AdversaryModel model = adversary == "sweep" ? gks::AdversaryModel::Sweep
                                                         : gks::AdversaryModel::Random;
  const gks::BatchReport report =
      gks::simulate_batch(strategy, descriptor, model, trials, seed);
  std::cout << (as_json ? gks::to_json(report) : gks::to_text(report));
  return report.wins == report.trials ? kExitPass : kExitVerifyFail;
}

// ------------------------------------------------------------------ play --

class PlayAborted : public std::runtime_error {
 public:
  PlayAborted() : std::runtime_error("input ended before the game finished") {}
};

class InteractiveMerlin : public gks::Adversary {
 public:
  InteractiveMerlin(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  void begin(int n) override {
    n_ = n;
    auto_mode_ = false;
    auto_queue_.clear();
    auto_next_ = 0;
  }

  int next_index(std::span<const std::int8_t> board) override {
    if (auto_mode_) return auto_queue_[auto_next_++];
    while (true) {
      show(board);
      out_ << "reveal which position (1-" << n_ << "), or \"auto\": " << std::flush;
      const std::string token = next_token();
      if (token == "auto") {
        engage_auto(board);
        return auto_queue_[auto_next_++];
      }
      int pos = 0;
      if (!parse_int(token, pos)) {
        out_ << "not a position: \"" << token << "\"\n";
        continue;
      }
      if (pos < 1 || pos > n_) {
        out_ << "position " << pos << " out of range 1-" << n_ << "\n";
        continue;
      }
      if (board[pos - 1] != -1) {
        out_ << "position " << pos << " is already filled\n";
        continue;
      }
      return pos - 1;
    }
  }

  int merlin_bit(std::span<const std::int8_t> board, int merlin_pos) override {
    if (auto_mode_) return rng_.bit();
    while (true) {
      show(board);
      out_ << "your position is " << merlin_pos + 1
           << "; write which bit (0/1 or bit=0/bit=1): " << std::flush;
      std::string token = next_token();
      if (token.rfind("bit=", 0) == 0) token = token.substr(4);
      if (token == "0" || token == "1") return token[0] - '0';
      out_ << "not a bit: \"" << token << "\"\n";
    }
  }

 private:
  void show(std::span<const std::int8_t> board) {
    out_ << "board: ";
    for (std::int8_t cell : board) {
      out_ << (cell < 0 ? '.' : static_cast<char>('0' + cell));
    }
    out_ << "\n";
  }

  void engage_auto(std::span<const std::int8_t> board) {
    auto_mode_ = true;
    auto_queue_.clear();
    auto_next_ = 0;
    for (int p = 0; p < n_; ++p) {
      if (board[p] == -1) auto_queue_.push_back(p);
    }
    rng_.shuffle(auto_queue_);
    out_ << "auto: delegating the remaining " << auto_queue_.size()
         << " reveals\n";
  }

  std::string next_token() {
    while (tokens_.empty()) {
      std::string line;
      if (!std::getline(in_, line)) throw PlayAborted();
      std::string token;
      for (char c : line) {
        if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
          if (!token.empty()) tokens_.push_back(token);
          token.clear();
        } else {
          token.push_back(c);
        }
      }
      if (!token.empty()) tokens_.push_back(token);
    }
    std::string front = tokens_.front();
    tokens_.erase(tokens_.begin());
    return front;
  }

  static bool parse_int(const std::string& token, int& value) {
    try {
      std::size_t used = 0;
      value = std::stoi(token, &used);
      return used == token.size();
    } catch (const std::exception&) {
      return false;
    }
  }

  std::istream& in_;
  std::ostream& out_;
  int n_ = 0;
  bool auto_mode_ = false;
  std::vector<int> auto_queue_;
  std::size_t auto_next_ = 0;
  gks::Rng rng_{kAutoPlaySeed};
  std::vector<std::string> tokens_;
};

int run_play(const std::string& descriptor, const std::string& record_file) {
  const gks::StrategyPtr strategy = gks::parse_strategy(descriptor);
  const gks::GameConfig config = strategy->config();
  std::cout << "playing " << strategy->describe() << ": n=" << config.n
            << ", k=" << config.k << "\n";
  std::cout << "you are Merlin: reveal positions one by one; the last position "
               "is yours to fill\n";

  InteractiveMerlin merlin(std::cin, std::cout);
  gks::GameResult result;
  try {
    result = gks::run_game(*strategy, merlin);
  } catch (const PlayAborted& e) {
    std::cerr << "aborted: " << e.what() << "\n";
    return kExitUsage;
  }

  std::cout << gks::to_text(result.transcript);
  std::cout << "result: " << (result.win ? "WIN" : "LOSS") << " (set size "
            << result.set_size << ", declared k " << config.k << ")\n";

  if (!record_file.empty()) {
    nlohmann::json j = nlohmann::json::parse(gks::to_json(result.transcript));
    j["win"] = result.win;
    j["strategy"] = descriptor;
    std::ofstream out(record_file, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write record file: " << record_file << "\n";
      return kExitUsage;
    }
    out << j.dump(2) << "\n";
    std::cout << "transcript recorded to " << record_file << "\n";
  }

  if (!result.win) {
    std::cerr << "defect: interactive loss against a verified strategy\n"
              << gks::to_text(result.transcript);
    return kExitVerifyFail;
  }
  return kExitPass;
}

// ---------------------------------------------------------------- search --

int run_search(int m, int u, std::uint64_t seed, std::int64_t budget_ms,
               const std::string& out_file, bool parallel) {
  gks::SearchProblem problem;
  problem.m = m;
  problem.u = u;
  problem.seed = seed;
  problem.time_budget = std::chrono::milliseconds(budget_ms);
  if (parallel) {
    const unsigned hw = std::thread::hardware_concurrency();
    problem.threads = static_cast<int>(hw == 0 ? 2 : hw);
  }

  const gks::SearchOutcome outcome = gks::search_table(problem);
  const char* kind = nullptr;
  switch (outcome.kind) {
    case gks::SearchOutcome::Kind::Found: kind = "found"; break;
    case gks::SearchOutcome::Kind::UnsatCounting: kind = "unsat(counting)"; break;
    case gks::SearchOutcome::Kind::UnsatExhausted: kind = "unsat(exhausted)"; break;
    case gks::SearchOutcome::Kind::Timeout: kind = "timeout"; break;
  }
  std::cout << "outcome: " << kind << "\n";
  if (outcome.kind == gks::SearchOutcome::Kind::UnsatCounting) {
    const gks::CountingBound b = gks::counting_bound(m, u);
    std::cout << "counting: " << b.lhs << " ball members > " << b.rhs << " strings\n";
  }
  std::cout << "nodes: " << outcome.stats.nodes << "\n";
  std::cout << "restarts: " << outcome.stats.restarts << "\n";
  std::cout << "best_depth: " << outcome.best_depth << "\n";
  if (outcome.symmetry_broken) std::cout << "symmetry_broken: true\n";
  std::cout << "wall_ms: " << outcome.stats.wall_ms << "\n";

  if (outcome.table) {
    const std::string text = gks::serialize_table(*outcome.table);
    if (out_file.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_file, std::ios::binary);
      if (!out) {
        std::cerr << "cannot write table file: " << out_file << "\n";
        return kExitUsage;
      }
      out << text;
      std::cout << "table written to " << out_file << "\n";
    }
  }
  return outcome.kind == gks::SearchOutcome::Kind::Timeout ? kExitBudget : kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"winning strategies for the last-bit board game"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "check a table's two code properties");
  std::string verify_table_file;
  bool verify_json = false;
  verify->add_option("--table", verify_table_file, "UCODE table file")->required();
  verify->add_flag("--json", verify_json, "machine-readable report");

  auto* selftest = app.add_subcommand("selftest", "run the built-in verification suite");
  std::string level = "quick";
  selftest->add_option("--level", level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));

  auto* simulate = app.add_subcommand("simulate", "run seeded batch games");
  std::string sim_descriptor;
  std::uint64_t sim_trials = 0;
  std::uint64_t sim_seed = 0;
  std::string sim_adversary = "random";
  bool sim_json = false;
  simulate->add_option("--strategy", sim_descriptor, "strategy descriptor")->required();
  simulate->add_option("--trials", sim_trials, "number of games")->required();
  simulate->add_option("--seed", sim_seed, "base seed; trial t uses seed+t")->required();
  simulate->add_option("--adversary", sim_adversary, "random or sweep")
      ->check(CLI::IsMember({"random", "sweep"}));
  simulate->add_flag("--json", sim_json, "machine-readable report");

  auto* play = app.add_subcommand("play", "play one game as Merlin");
  std::string play_descriptor;
  std::string play_record;
  play->add_option("--strategy", play_descriptor, "strategy descriptor")->required();
  play->add_option("--record", play_record, "write the transcript as JSON");

  auto* search = app.add_subcommand("search", "look for a table with both code properties");
  int search_m = 12;
  int search_u = 3;
  std::uint64_t search_seed = 0;
  std::int64_t search_budget_ms = 0;
  std::string search_out;
  bool search_parallel = false;
  search->add_option("--m", search_m, "block length")->required();
  search->add_option("--u", search_u, "underline count")->required();
  search->add_option("--seed", search_seed, "randomization seed")->required();
  search->add_option("--budget-ms", search_budget_ms, "wall-clock budget")
      ->required()
      ->check(CLI::NonNegativeNumber);
  search->add_option("--out", search_out, "write a found table here (UCODE)");
  search->add_flag("--parallel", search_parallel, "run seeded restarts concurrently");

  auto* exponent = app.add_subcommand("exponent", "print ln k / ln n");
  int exp_k = 0;
  int exp_n = 0;
  exponent->add_option("--k", exp_k, "set size bound")->required();
  exponent->add_option("--n", exp_n, "board size")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(verify)) return run_verify(verify_table_file, verify_json);
    if (app.got_subcommand(selftest)) return run_selftest(level);
    if (app.got_subcommand(simulate)) {
      return run_simulate(sim_descriptor, sim_trials, sim_seed, sim_adversary, sim_json);
    }
    if (app.got_subcommand(play)) return run_play(play_descriptor, play_record);
    if (app.got_subcommand(search)) {
      return run_search(search_m, search_u, search_seed, search_budget_ms, search_out,
                        search_parallel);
    }
    if (app.got_subcommand(exponent)) {
      char buffer[64];
      std::snprintf(buffer, sizeof buffer, "%.10g", gks::exponent(exp_k, exp_n));
      std::cout << buffer << "\n";
      return kExitPass;
    }
  } catch (const gks::DescriptorError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const gks::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    // TableError, ParseError, DecodeError: the inputs fail verification.
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  return kExitUsage;
}
