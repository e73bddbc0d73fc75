#pragma once

#include <string>
#include <vector>

namespace circ {

// Pinned reproduction suites. Every suite freezes its seeds, sample counts
// and tolerances in code, so a rerun on any machine produces the identical
// table. The CLI exposes them under `circ repro`; the acceptance binary runs
// the same functions.

struct ReproRow {
  std::string suite;
  std::string item;
  bool pass = false;
  std::string detail;
  long millis = 0;
};

// Suite names in reporting order.
const std::vector<std::string>& repro_suites();

// One suite by name; throws Error on an unknown name. Exceptions inside a
// suite item are caught and reported as failing rows, never propagated.
std::vector<ReproRow> run_repro(const std::string& suite);

std::vector<ReproRow> run_repro_all();

bool repro_all_pass(const std::vector<ReproRow>& rows);

}  // namespace circ
