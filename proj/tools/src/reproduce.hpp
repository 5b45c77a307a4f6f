#pragma once

#include <cstddef>
#include <iosfwd>
#include <nlohmann/json.hpp>

namespace nialg::cli {

struct ReproduceOptions {
  int max_degree = 8;  // caps every table; values above it are skipped
  std::size_t threads = 1;
  std::size_t unique_trials = 0;  // 0 keeps the table's trial count
};

// Runs every expected-value table and returns a report whose "checks" list
// is in table order. No timings are recorded, so equal inputs give equal output.
nlohmann::ordered_json reproduce(const nlohmann::json& expected, const ReproduceOptions& opts, std::ostream* progress);

const char* expected_tables();

}  // namespace nialg::cli
