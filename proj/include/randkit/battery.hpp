#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "randkit/bitstream.hpp"

namespace randkit::battery {

struct TestResult {
  std::string test_name;
  double statistic = 0.0;
  double p_value = 0.0;
  uint64_t n = 0;
  bool pass = false;            // p_value >= significance (when applicable)
  bool not_applicable = false;  // prerequisite failed or stream too short
  std::string note;             // reason when not applicable
  std::map<std::string, double> parameters;
};

// Frequency of ones vs the fair-coin expectation.
TestResult monobit(const BitStream& bits, double significance = 0.0001);

// Count of maximal runs vs expectation given the observed ones-proportion.
// Returns a not-applicable result when the proportion prerequisite fails.
TestResult runs_test(const BitStream& bits, double significance = 0.0001);

// Cell occupancy against the uniform expectation, df = q-1.
TestResult chi_square_uniformity(const SymbolStream& s, double significance = 0.0001);

// Non-overlapping dim-tuple occupancy, df = q^dim - 1. Detects lattice
// structure that single-cell counts miss.
TestResult serial_test(const SymbolStream& s, unsigned dim, double significance = 0.0001);

// Agreement rate between the stream and its lag-shifted self.
TestResult autocorrelation(const BitStream& bits, uint64_t lag, double significance = 0.0001);

// Approximate entropy over overlapping m-blocks with cyclic extension;
// statistic 2n(ln 2 - ApEn), df = 2^m.
TestResult approx_entropy(const BitStream& bits, unsigned m, double significance = 0.0001);

// Exact 1D star discrepancy by the sorted-points formula.
double star_discrepancy(const std::vector<UnitReal>& points);

// Kolmogorov-Smirnov uniformity check on values in [0,1] (Stephens'
// finite-n correction applied to the statistic).
TestResult ks_uniform(const std::vector<double>& values, double significance = 0.001);

struct CoverageCurve {
  unsigned depth = 1;
  uint32_t q = 2;
  // (streams consumed, fraction of the q^d possible prefixes seen)
  std::vector<std::pair<uint64_t, double>> points;

  double final_fraction() const { return points.empty() ? 0.0 : points.back().second; }
};

// Fraction of all q^d length-d prefixes observed among the given sequences,
// reported at log-spaced counts.
CoverageCurve prefix_coverage(const std::vector<SymbolStream>& streams, unsigned depth);

struct BatteryConfig {
  double significance = 0.0001;
  uint32_t q = 16;                       // symbol alphabet for occupancy tests
  std::vector<unsigned> serial_dims = {2, 3};
  std::vector<uint64_t> lags = {1, 2, 8, 64, 1024};
  unsigned apen_m = 2;
  // Test selection in report order; empty list = empty report.
  std::vector<std::string> tests = default_tests();

  static std::vector<std::string> default_tests();
};

struct BatteryReport {
  std::vector<TestResult> results;
  std::string provenance;
  uint64_t bit_count = 0;
  double significance = 0.0001;
  uint64_t passed = 0, failed = 0, not_applicable = 0;
};

// Runs the selected tests; per-test preconditions that fail are recorded as
// not-applicable rows, never aborting the battery.
BatteryReport run_battery(const BitStream& bits, const BatteryConfig& cfg);

nlohmann::json report_to_json(const BatteryReport& r);
std::string report_to_csv(const BatteryReport& r);

}  // namespace randkit::battery
