#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hill/criteria.hpp"
#include "hill/potential.hpp"

namespace hill {

struct CorpusEntry {
  std::string name;
  PotentialSpec spec;
  int s = 0;  // smoothness class used by the coefficient criteria
  std::optional<JumpMeta> jump;
};

// zero, mathieu 2cos(4 pi x), gasymov e^{2 pi i x}, complex trig, sawtooth x - 1/2
// (2048 samples) and the degree-64 sawtooth trig polynomial
std::vector<CorpusEntry> default_corpus();
const CorpusEntry& corpus_entry(const std::string& name);

struct AcceptanceItem {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;  // wall time, kept out of verify.json
};

struct AcceptanceSuite {
  std::vector<AcceptanceItem> items;
  bool passed() const;
};

AcceptanceItem accept_free_operator();        // 1
AcceptanceItem accept_oracle_equivalence();   // 2
AcceptanceItem accept_remainder_decay();      // 3
AcceptanceItem accept_alpha_order();          // 4
AcceptanceItem accept_partial_sum_identity();      // 5
AcceptanceItem accept_residual_decay();       // 6
AcceptanceItem accept_b1_closed_form();       // 7
AcceptanceItem accept_chain_consistency();    // 8
AcceptanceItem accept_antiperiodic();         // 9

// items 1-9; item 10 reruns them and compares the serialized results
AcceptanceSuite run_acceptance(bool with_determinism = true);

std::string verify_json(const std::string& hash, const std::vector<AcceptanceItem>& items,
                        const std::vector<std::string>& preflight = {});
void print_summary(std::ostream& os, const std::vector<AcceptanceItem>& items);

}  // namespace hill
