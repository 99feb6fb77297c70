#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "randkit/battery.hpp"
#include "randkit/error.hpp"
#include "randkit/prng.hpp"

using namespace randkit;
namespace bt = randkit::battery;

namespace {

bool rel_close(double got, double want, double tol) {
  if (want == 0.0) return got == 0.0;
  return std::fabs(got / want - 1.0) <= tol;
}

BitStream alternating(uint64_t n) {
  BitStream s;
  for (uint64_t i = 0; i < n; ++i) s.push_back(static_cast<uint8_t>(i & 1));
  return s;
}

BitStream constant(uint64_t n, uint8_t v) {
  BitStream s;
  s.bits.assign(n, v);
  return s;
}

SymbolStream symbols_with_counts(uint32_t q, const std::vector<int>& counts) {
  SymbolStream s;
  s.q = q;
  for (uint32_t v = 0; v < counts.size(); ++v) {
    for (int i = 0; i < counts[v]; ++i) s.symbols.push_back(v);
  }
  return s;
}

}  // namespace

// Reference p-values: mpmath 1.3 at 50 decimal digits.
TEST_CASE("monobit statistic and p-value") {
  // 72 ones in 128 bits: |S| = 16, stat = 16/sqrt(128) = sqrt(2)
  BitStream s = constant(72, 1);
  s.append(constant(56, 0));
  const bt::TestResult r = bt::monobit(s);
  CHECK(r.n == 128);
  CHECK(rel_close(r.statistic, 1.4142135623730950, 1e-13));
  CHECK(rel_close(r.p_value, 0.15729920705028513, 1e-12));
  CHECK(r.pass);

  // all ones: decisive failure
  const bt::TestResult bad = bt::monobit(constant(100, 1));
  CHECK(rel_close(bad.p_value, 1.5239706048321052e-23, 1e-11));
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.not_applicable);

  CHECK_THROWS_AS(bt::monobit(constant(99, 1)), Error);
}

TEST_CASE("runs test counts maximal runs") {
  // perfect alternation: 128 runs, stat = |128-64|/8 = 8
  const bt::TestResult r = bt::runs_test(alternating(128));
  CHECK(r.parameters.at("runs") == 128.0);
  CHECK(rel_close(r.statistic, 8.0, 1e-13));
  CHECK(rel_close(r.p_value, 1.1224297172982927e-29, 1e-11));
  CHECK_FALSE(r.pass);

  CHECK_THROWS_AS(bt::runs_test(alternating(99)), Error);
}

TEST_CASE("runs test bows out when the frequency prerequisite fails") {
  BitStream s = constant(80, 1);
  s.append(constant(20, 0));  // proportion 0.8, threshold 2/sqrt(100) = 0.2
  const bt::TestResult r = bt::runs_test(s);
  CHECK(r.not_applicable);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("chi-square occupancy statistic") {
  // counts 10/20/30/40 against expected 25: stat = 20, df = 3
  const bt::TestResult r = bt::chi_square_uniformity(
      symbols_with_counts(4, {10, 20, 30, 40}));
  CHECK(r.n == 100);
  CHECK(rel_close(r.statistic, 20.0, 1e-13));
  CHECK(rel_close(r.p_value, 0.00016974243555282643, 1e-12));
  CHECK(r.pass);  // above the 1e-4 default significance

  // perfectly balanced: stat 0, p = 1
  const bt::TestResult flat = bt::chi_square_uniformity(
      symbols_with_counts(4, {25, 25, 25, 25}));
  CHECK(flat.statistic == 0.0);
  CHECK(flat.p_value == 1.0);

  CHECK_THROWS_AS(bt::chi_square_uniformity(symbols_with_counts(4, {1, 1, 1, 1})), Error);
}

TEST_CASE("serial test over non-overlapping tuples") {
  // 40 pairs with counts (0,0):13 (0,1):10 (1,0):10 (1,1):7 -> stat 1.8, df 3
  SymbolStream s;
  s.q = 2;
  auto add_pairs = [&](uint32_t a, uint32_t b, int k) {
    for (int i = 0; i < k; ++i) {
      s.symbols.push_back(a);
      s.symbols.push_back(b);
    }
  };
  add_pairs(0, 0, 13);
  add_pairs(0, 1, 10);
  add_pairs(1, 0, 10);
  add_pairs(1, 1, 7);
  const bt::TestResult r = bt::serial_test(s, 2);
  CHECK(r.test_name == "serial-2");
  CHECK(rel_close(r.statistic, 1.8, 1e-13));
  CHECK(rel_close(r.p_value, 0.61493493578253741, 1e-12));
  CHECK(r.pass);
}

TEST_CASE("serial test guards dimensions and cell budget") {
  const SymbolStream s = symbols_with_counts(2, {50, 50});
  CHECK_THROWS_AS(bt::serial_test(s, 1), Error);
  CHECK_THROWS_AS(bt::serial_test(s, 4), Error);
  // q=65 squared exceeds the 4096-cell budget
  SymbolStream wide;
  wide.q = 65;
  wide.symbols.assign(65 * 65 * 5, 0);
  CHECK_THROWS_AS(bt::serial_test(wide, 2), Error);
  try {
    bt::serial_test(wide, 2);
  } catch (const Error& e) {
    CHECK(e.code() == errc::cell_budget_exceeded);
  }
  // too few symbols for the cell count
  SymbolStream tiny = symbols_with_counts(2, {9, 10});
  CHECK_THROWS_AS(bt::serial_test(tiny, 2), Error);
}

TEST_CASE("autocorrelation flags lag-aligned structure") {
  // alternation: lag 1 always disagrees, lag 2 always agrees
  const bt::TestResult r1 = bt::autocorrelation(alternating(128), 1);
  CHECK(r1.test_name == "autocorr-1");
  CHECK(rel_close(r1.statistic, -11.269427669584645, 1e-13));
  CHECK(rel_close(r1.p_value, 1.8577351435736264e-29, 1e-11));
  CHECK_FALSE(r1.pass);

  const bt::TestResult r2 = bt::autocorrelation(alternating(128), 2);
  CHECK(rel_close(r2.statistic, 11.224972160321824, 1e-13));
  CHECK(rel_close(r2.p_value, 3.0748327642612323e-29, 1e-11));

  CHECK_THROWS_AS(bt::autocorrelation(alternating(128), 0), Error);
  CHECK_THROWS_AS(bt::autocorrelation(alternating(128), 65), Error);  // lag > n/2
}

TEST_CASE("approximate entropy of a degenerate stream") {
  // constant stream: ApEn 0, stat = 2n ln 2
  const bt::TestResult r = bt::approx_entropy(constant(128, 0), 2);
  CHECK(r.parameters.at("apen") == 0.0);
  CHECK(rel_close(r.statistic, 177.44567822334600, 1e-13));
  CHECK(rel_close(r.p_value, 2.6367172628877150e-37, 1e-11));
  CHECK_FALSE(r.pass);

  // strict alternation has the same single-successor structure
  const bt::TestResult alt = bt::approx_entropy(alternating(128), 2);
  CHECK(alt.parameters.at("apen") == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("approximate entropy guards its block length") {
  CHECK_THROWS_AS(bt::approx_entropy(constant(128, 0), 3), Error);  // m > log2(128)-5
  CHECK_THROWS_AS(bt::approx_entropy(constant(99, 0), 1), Error);   // too short
  try {
    bt::approx_entropy(constant(128, 0), 3);
  } catch (const Error& e) {
    CHECK(e.code() == errc::block_too_large);
  }
}

TEST_CASE("star discrepancy by the sorted-points formula") {
  CHECK(bt::star_discrepancy({UnitReal{0.5, 1}}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(bt::star_discrepancy({UnitReal{0.25, 1}, UnitReal{0.75, 1}}) ==
        doctest::Approx(0.25).epsilon(1e-15));
  // stratified points (2i-1)/2n have the minimal discrepancy 1/2n
  std::vector<UnitReal> strat;
  for (int i = 1; i <= 10; ++i) strat.push_back(UnitReal{(2.0 * i - 1.0) / 20.0, 1});
  CHECK(bt::star_discrepancy(strat) == doctest::Approx(0.05).epsilon(1e-13));

  CHECK_THROWS_AS(bt::star_discrepancy({}), Error);
  CHECK_THROWS_AS(bt::star_discrepancy({UnitReal{1.5, 1}}), Error);
}

TEST_CASE("ks uniformity check with the finite-n correction") {
  // ten values piled at 0.9: D = 0.9, lambda = 2.9853564429872084
  const bt::TestResult bad = bt::ks_uniform(std::vector<double>(10, 0.9));
  CHECK(rel_close(bad.statistic, 0.9, 1e-13));
  CHECK(rel_close(bad.parameters.at("lambda"), 2.9853564429872084, 1e-13));
  CHECK(rel_close(bad.p_value, 3.629597429424618e-8, 1e-11));
  CHECK_FALSE(bad.pass);

  // evenly stratified sample passes at any reasonable level
  std::vector<double> strat;
  for (int i = 1; i <= 20; ++i) strat.push_back((2.0 * i - 1.0) / 40.0);
  const bt::TestResult good = bt::ks_uniform(strat);
  CHECK(rel_close(good.statistic, 0.025, 1e-13));
  CHECK(good.pass);

  CHECK_THROWS_AS(bt::ks_uniform({0.1, 0.2}), Error);
  CHECK_THROWS_AS(bt::ks_uniform({0.1, 0.2, 0.3, 0.4, 1.7}), Error);
}

TEST_CASE("prefix coverage tracks first-seen fractions") {
  // q=2 depth=2: streams covering 3 of 4 prefixes
  auto stream = [](std::initializer_list<uint32_t> v) {
    SymbolStream s;
    s.q = 2;
    s.symbols.assign(v);
    return s;
  };
  const std::vector<SymbolStream> streams = {stream({0, 0}), stream({0, 1}),
                                             stream({0, 0}), stream({1, 1})};
  const bt::CoverageCurve c = bt::prefix_coverage(streams, 2);
  CHECK(c.depth == 2);
  CHECK(c.q == 2);
  CHECK(c.final_fraction() == doctest::Approx(0.75));
  // log-spaced reporting always includes the first and last counts
  CHECK(c.points.front().first == 1);
  CHECK(c.points.back().first == 4);
  CHECK(c.points.front().second == doctest::Approx(0.25));

  CHECK(bt::CoverageCurve{}.final_fraction() == 0.0);
}

TEST_CASE("prefix coverage validates its inputs") {
  SymbolStream a;
  a.q = 2;
  a.symbols = {0, 1};
  SymbolStream b = a;
  b.q = 3;
  CHECK_THROWS_AS(bt::prefix_coverage({}, 2), Error);
  CHECK_THROWS_AS(bt::prefix_coverage({a}, 0), Error);
  CHECK_THROWS_AS(bt::prefix_coverage({a}, 3), Error);       // stream shorter than depth
  CHECK_THROWS_AS(bt::prefix_coverage({a, b}, 2), Error);    // mixed q
  SymbolStream wide;
  wide.q = 4000;
  wide.symbols = {0, 0, 0};
  CHECK_THROWS_AS(bt::prefix_coverage({wide}, 3), Error);    // 4000^3 cells
}

TEST_CASE("battery runs its configured suite and tallies outcomes") {
  PrngState s = PrngState::from(PrngDescriptor::xorshift(1));
  const BitStream bits = prng_bits(s, 200000);
  const bt::BatteryReport rep = bt::run_battery(bits, bt::BatteryConfig{});

  // monobit, runs, chi-square, serial-2, serial-3, 5 autocorr lags, apen
  CHECK(rep.results.size() == 11);
  CHECK(rep.passed + rep.failed + rep.not_applicable == rep.results.size());
  CHECK(rep.bit_count == 200000);
  CHECK(rep.failed == 0);  // a sound generator at significance 1e-4
  CHECK(rep.not_applicable == 0);

  bt::BatteryConfig narrow;
  narrow.tests = {"monobit"};
  CHECK(bt::run_battery(bits, narrow).results.size() == 1);

  bt::BatteryConfig unknown;
  unknown.tests = {"monobit", "entanglement"};
  CHECK_THROWS_AS(bt::run_battery(bits, unknown), Error);
}

TEST_CASE("battery failures become rows, prerequisite trips become na rows") {
  // 600 bits: serial needs 5*q^dim symbols, so serial-2/3 land as na
  PrngState s = PrngState::from(PrngDescriptor::xorshift(5));
  const BitStream bits = prng_bits(s, 600);
  const bt::BatteryReport rep = bt::run_battery(bits, bt::BatteryConfig{});
  uint64_t na = 0;
  for (const auto& r : rep.results) {
    if (r.not_applicable) {
      ++na;
      CHECK_FALSE(r.note.empty());
    }
  }
  CHECK(na == rep.not_applicable);
  CHECK(na >= 3);  // serial-2, serial-3, autocorr-1024 at least

  // a constant stream fails decisively without aborting the battery
  const bt::BatteryReport flat = bt::run_battery(constant(30000, 1), bt::BatteryConfig{});
  CHECK(flat.failed >= 2);
  CHECK(flat.results.size() == 11);
}

TEST_CASE("battery reports serialize to json and csv") {
  PrngState s = PrngState::from(PrngDescriptor::xorshift(2));
  BitStream bits = prng_bits(s, 120000);
  bits.provenance = "unit-fixture";
  const bt::BatteryReport rep = bt::run_battery(bits, bt::BatteryConfig{});

  const nlohmann::json j = bt::report_to_json(rep);
  CHECK(j.at("provenance") == "unit-fixture");
  CHECK(j.at("bit_count") == 120000);
  CHECK(j.at("results").size() == 11);
  CHECK(j.at("summary").at("passed") == rep.passed);
  CHECK(j.at("results")[0].contains("p_value"));

  const std::string csv = bt::report_to_csv(rep);
  CHECK(csv.rfind("name,parameters,statistic,p_value,pass\n", 0) == 0);
  // one header plus one line per result
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);
}
