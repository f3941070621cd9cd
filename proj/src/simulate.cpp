#include "gks/simulate.hpp"

#include <sstream>

#include <json.hpp>

namespace gks {

void SweepAdversary::begin(int n) {
  order_.resize(n);
  const int start = static_cast<int>(trial_ % static_cast<std::uint64_t>(n));
  for (int i = 0; i < n; ++i) order_[i] = (start + i) % n;
  next_ = 0;
}

BatchReport simulate_batch(const StrategyPtr& strategy, const std::string& descriptor,
                           AdversaryModel adversary, std::uint64_t trials,
                           std::uint64_t seed) {
  if (!strategy) throw std::invalid_argument("simulate: null strategy");
  BatchReport report;
  report.strategy = descriptor;
  report.adversary = adversary == AdversaryModel::Random ? "random" : "sweep";
  report.n = strategy->config().n;
  report.declared_k = strategy->config().k;
  report.trials = trials;
  report.seed = seed;
  for (std::uint64_t t = 0; t < trials; ++t) {
    GameResult result;
    if (adversary == AdversaryModel::Random) {
      RandomAdversary merlin(seed + t);
      result = run_game(*strategy, merlin);
    } else {
      SweepAdversary merlin(t);
      result = run_game(*strategy, merlin);
    }
    if (result.win) ++report.wins;
    report.max_set_size = std::max(report.max_set_size, result.set_size);
    ++report.set_size_histogram[result.set_size];
  }
  return report;
}

std::string to_text(const BatchReport& report) {
  std::ostringstream out;
  out << "strategy: " << report.strategy << "\n";
  out << "adversary: " << report.adversary << "\n";
  out << "n: " << report.n << "\n";
  out << "declared_k: " << report.declared_k << "\n";
  out << "trials: " << report.trials << "\n";
  out << "wins: " << report.wins << "\n";
  out << "max_set_size: " << report.max_set_size << "\n";
  out << "set_sizes:";
  for (const auto& [size, count] : report.set_size_histogram) {
    out << " " << size << "x" << count;
  }
  out << "\n";
  out << "seed: " << report.seed << "\n";
  return out.str();
}

std::string to_json(const BatchReport& report) {
  nlohmann::json histogram = nlohmann::json::object();
  for (const auto& [size, count] : report.set_size_histogram) {
    histogram[std::to_string(size)] = count;
  }
  const nlohmann::json j = {
      {"strategy", report.strategy},
      {"adversary", report.adversary},
      {"n", report.n},
      {"declared_k", report.declared_k},
      {"trials", report.trials},
      {"wins", report.wins},
      {"max_set_size", report.max_set_size},
      {"set_size_histogram", histogram},
      {"seed", report.seed},
  };
  return j.dump(2) + "\n";
}

namespace {

std::vector<int> one_based(const std::vector<int>& positions) {
  std::vector<int> out;
  out.reserve(positions.size());
  for (int p : positions) out.push_back(p + 1);
  return out;
}

std::string word_string(const std::vector<std::uint8_t>& written) {
  std::string s;
  s.reserve(written.size());
  for (std::uint8_t b : written) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace

std::string to_text(const Transcript& t) {
  std::ostringstream out;
  out << "arrival order:";
  for (int p : t.arrival_order) out << " " << p + 1;
  out << "\n";
  out << "final string: " << word_string(t.written) << "\n";
  out << "merlin: position " << t.merlin_pos + 1 << ", wrote " << t.merlin_bit << "\n";
  out << "bob: {";
  for (std::size_t i = 0; i < t.bob_set.size(); ++i) {
    out << (i ? "," : "") << t.bob_set[i] + 1;
  }
  out << "} bit " << t.bob_bit << "\n";
  return out.str();
}

std::string to_json(const Transcript& t) {
  const nlohmann::json j = {
      {"arrival_order", one_based(t.arrival_order)},
      {"final_string", word_string(t.written)},
      {"merlin_pos", t.merlin_pos + 1},
      {"merlin_bit", t.merlin_bit},
      {"bob_set", one_based(t.bob_set)},
      {"bob_bit", t.bob_bit},
  };
  return j.dump(2) + "\n";
}

}  // namespace gks
