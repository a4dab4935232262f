#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "advreg/formula.hpp"

namespace advreg::testing {

struct CorpusEntry {
  std::string name;
  std::string text;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::vector<CorpusEntry> load_corpus() {
  std::vector<CorpusEntry> out;
  for (const auto& e : std::filesystem::directory_iterator(std::filesystem::path(ADVREG_FIXTURES) / "corpus"))
    if (e.path().extension() == ".mso") out.push_back({e.path().stem().string(), read_file(e.path())});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

// Explicit predicates with random characteristic words for n = 0..n_max.
inline Interpretation random_interpretation(std::mt19937& rng, const std::vector<std::string>& names,
                                            std::size_t n_max) {
  Interpretation out;
  std::bernoulli_distribution bit(0.5);
  for (const auto& name : names) {
    std::map<std::size_t, TrackBits> table;
    for (std::size_t n = 0; n <= n_max; ++n) {
      TrackBits b(n);
      for (auto& x : b) x = bit(rng);
      table[n] = b;
    }
    out.emplace(name, MonadicPredicate::explicit_table(name, table));
  }
  return out;
}

}  // namespace advreg::testing
