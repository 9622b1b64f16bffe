#pragma once

#include <string>
#include <vector>

#include "fockdim/parallel.hpp"
#include "fockdim_cli/report.hpp"

namespace fockdim::cli {

struct ExampleReport {
  std::string id;
  std::string expected;
  std::string computed;
  bool pass = false;
  /// Numbers behind `computed`.
  Json detail;
};

/// Ids of the built-in examples, in suite order.
std::vector<std::string> example_ids();

/// Runs the examples whose id is in `only` (all when empty). Seeds are fixed,
/// so the reports depend only on the code, not on `exec`.
std::vector<ExampleReport> examples_suite(const std::vector<std::string>& only, Execution exec);

}  // namespace fockdim::cli
