#include "randkit/battery.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "randkit/error.hpp"
#include "randkit/special.hpp"

namespace randkit::battery {

namespace {

TestResult finish(TestResult r, double significance) {
  r.pass = !r.not_applicable && r.p_value >= significance;
  return r;
}

// Phi(k) = sum over k-bit patterns of freq * ln(freq), windows cyclic.
double apen_phi(const BitStream& bits, unsigned k) {
  const uint64_t n = bits.size();
  std::vector<uint64_t> counts(1ull << k, 0);
  const uint64_t mask = (1ull << k) - 1;
  uint64_t v = 0;
  for (unsigned i = 0; i < k; ++i) v = (v << 1) | bits.bits[i % n];
  for (uint64_t i = 0; i < n; ++i) {
    ++counts[v & mask];
    v = (v << 1) | bits.bits[(i + k) % n];
  }
  double phi = 0.0;
  for (uint64_t c : counts) {
    if (c == 0) continue;
    const double f = static_cast<double>(c) / static_cast<double>(n);
    phi += f * std::log(f);
  }
  return phi;
}

}  // namespace

TestResult monobit(const BitStream& bits, double significance) {
  const uint64_t n = bits.size();
  if (n < 100) raise(errc::insufficient_data, "monobit needs >= 100 bits");
  const int64_t s = 2 * static_cast<int64_t>(bits.ones_count()) - static_cast<int64_t>(n);
  TestResult r;
  r.test_name = "monobit";
  r.n = n;
  r.statistic = std::fabs(static_cast<double>(s)) / std::sqrt(static_cast<double>(n));
  r.p_value = sf::erfc(r.statistic / std::sqrt(2.0));
  return finish(r, significance);
}

TestResult runs_test(const BitStream& bits, double significance) {
  const uint64_t n = bits.size();
  if (n < 100) raise(errc::insufficient_data, "runs test needs >= 100 bits");
  const double pi = static_cast<double>(bits.ones_count()) / static_cast<double>(n);
  TestResult r;
  r.test_name = "runs";
  r.n = n;
  r.parameters["ones_proportion"] = pi;
  if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(static_cast<double>(n))) {
    r.not_applicable = true;
    r.note = "ones proportion too far from 1/2 for the runs approximation";
    return finish(r, significance);
  }
  uint64_t v = 1;
  for (uint64_t i = 0; i + 1 < n; ++i) v += bits.bits[i] != bits.bits[i + 1];
  r.parameters["runs"] = static_cast<double>(v);
  const double mean = 2.0 * static_cast<double>(n) * pi * (1.0 - pi);
  const double denom = 2.0 * std::sqrt(2.0 * static_cast<double>(n)) * pi * (1.0 - pi);
  r.statistic = std::fabs(static_cast<double>(v) - mean) / denom;
  r.p_value = sf::erfc(r.statistic);
  return finish(r, significance);
}

TestResult chi_square_uniformity(const SymbolStream& s, double significance) {
  const uint64_t n = s.size();
  if (s.q < 2) raise(errc::invalid_modulus, "chi-square needs q >= 2");
  if (n < 5ull * s.q) {
    raise(errc::insufficient_data, "chi-square needs >= 5q symbols (expected count >= 5)");
  }
  std::vector<uint64_t> counts(s.q, 0);
  for (uint32_t sym : s.symbols) ++counts[sym];
  const double expected = static_cast<double>(n) / s.q;
  double stat = 0.0;
  for (uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  TestResult r;
  r.test_name = "chi-square";
  r.n = n;
  r.parameters["q"] = s.q;
  r.statistic = stat;
  r.p_value = sf::chi_square_upper(stat, static_cast<double>(s.q - 1));
  return finish(r, significance);
}

TestResult serial_test(const SymbolStream& s, unsigned dim, double significance) {
  if (dim < 2 || dim > 3) raise(errc::domain_error, "serial test dimension must be 2 or 3");
  if (s.q < 2) raise(errc::invalid_modulus, "serial test needs q >= 2");
  uint64_t cells = 1;
  for (unsigned i = 0; i < dim; ++i) cells *= s.q;
  if (cells > 4096) {
    raise(errc::cell_budget_exceeded, "serial test q^dim must be <= 4096, got " +
                                          std::to_string(cells));
  }
  const uint64_t n = s.size();
  if (n < 5 * cells) raise(errc::insufficient_data, "serial test needs >= 5 q^dim symbols");
  const uint64_t tuples = n / dim;
  std::vector<uint64_t> counts(cells, 0);
  for (uint64_t t = 0; t < tuples; ++t) {
    uint64_t idx = 0;
    for (unsigned k = 0; k < dim; ++k) idx = idx * s.q + s.symbols[t * dim + k];
    ++counts[idx];
  }
  const double expected = static_cast<double>(tuples) / static_cast<double>(cells);
  double stat = 0.0;
  for (uint64_t c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  TestResult r;
  r.test_name = "serial-" + std::to_string(dim);
  r.n = n;
  r.parameters["q"] = s.q;
  r.parameters["dim"] = dim;
  r.statistic = stat;
  r.p_value = sf::chi_square_upper(stat, static_cast<double>(cells - 1));
  return finish(r, significance);
}

TestResult autocorrelation(const BitStream& bits, uint64_t lag, double significance) {
  const uint64_t n = bits.size();
  if (lag < 1 || lag > n / 2) {
    raise(errc::insufficient_data,
          "autocorrelation needs 1 <= lag <= n/2 (lag " + std::to_string(lag) + ", n " +
              std::to_string(n) + ")");
  }
  const uint64_t m = n - lag;
  uint64_t agree = 0;
  for (uint64_t i = 0; i < m; ++i) agree += bits.bits[i] == bits.bits[i + lag];
  const double z = (static_cast<double>(agree) - static_cast<double>(m) / 2.0) /
                   std::sqrt(static_cast<double>(m) / 4.0);
  TestResult r;
  r.test_name = "autocorr-" + std::to_string(lag);
  r.n = n;
  r.parameters["lag"] = static_cast<double>(lag);
  r.statistic = z;
  r.p_value = sf::normal_two_sided_p(z);
  return finish(r, significance);
}

TestResult approx_entropy(const BitStream& bits, unsigned m, double significance) {
  const uint64_t n = bits.size();
  if (m < 1) raise(errc::domain_error, "approximate entropy needs m >= 1");
  if (n < 100) raise(errc::insufficient_data, "approximate entropy needs >= 100 bits");
  if (static_cast<double>(m) > std::log2(static_cast<double>(n)) - 5.0) {
    raise(errc::block_too_large, "approximate entropy block length m=" + std::to_string(m) +
                                     " too large for n=" + std::to_string(n));
  }
  const double apen = apen_phi(bits, m) - apen_phi(bits, m + 1);
  TestResult r;
  r.test_name = "approx-entropy";
  r.n = n;
  r.parameters["m"] = m;
  r.parameters["apen"] = apen;
  r.statistic = 2.0 * static_cast<double>(n) * (std::log(2.0) - apen);
  r.p_value = sf::chi_square_upper(r.statistic, static_cast<double>(1ull << m));
  return finish(r, significance);
}

double star_discrepancy(const std::vector<UnitReal>& points) {
  if (points.empty()) raise(errc::insufficient_data, "star discrepancy of an empty set");
  std::vector<double> x;
  x.reserve(points.size());
  for (const UnitReal& p : points) {
    if (p.value < 0.0 || p.value > 1.0) {
      raise(errc::domain_error, "star discrepancy points must lie in [0,1]");
    }
    x.push_back(p.value);
  }
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double hi = (static_cast<double>(i) + 1.0) / n - x[i];
    const double lo = x[i] - static_cast<double>(i) / n;
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

TestResult ks_uniform(const std::vector<double>& values, double significance) {
  if (values.size() < 5) raise(errc::insufficient_data, "ks test needs >= 5 values");
  std::vector<double> x = values;
  for (double v : x) {
    if (v < 0.0 || v > 1.0) raise(errc::domain_error, "ks values must lie in [0,1]");
  }
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - x[i],
                             x[i] - static_cast<double>(i) / n));
  }
  const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
  TestResult r;
  r.test_name = "ks-uniform";
  r.n = x.size();
  r.statistic = d;
  r.parameters["lambda"] = lambda;
  r.p_value = sf::kolmogorov_q(lambda);
  return finish(r, significance);
}

CoverageCurve prefix_coverage(const std::vector<SymbolStream>& streams, unsigned depth) {
  if (depth < 1) raise(errc::domain_error, "prefix coverage depth must be >= 1");
  if (streams.empty()) raise(errc::insufficient_data, "prefix coverage needs streams");
  const uint32_t q = streams.front().q;
  uint64_t cells = 1;
  for (unsigned i = 0; i < depth; ++i) {
    cells *= q;
    if (cells > 10000000ull) {
      raise(errc::cell_budget_exceeded, "prefix coverage q^d must be <= 10^7");
    }
  }
  for (const SymbolStream& s : streams) {
    if (s.q != q) raise(errc::length_mismatch, "prefix coverage streams must share q");
    if (s.size() < depth) {
      raise(errc::insufficient_data, "prefix coverage stream shorter than depth");
    }
  }
  CoverageCurve curve;
  curve.depth = depth;
  curve.q = q;
  std::vector<bool> seen(cells, false);
  uint64_t covered = 0;
  uint64_t next_report = 1;
  for (std::size_t i = 0; i < streams.size(); ++i) {
    uint64_t idx = 0;
    for (unsigned k = 0; k < depth; ++k) idx = idx * q + streams[i].symbols[k];
    if (!seen[idx]) {
      seen[idx] = true;
      ++covered;
    }
    const uint64_t n = i + 1;
    if (n == next_report || n == streams.size()) {
      curve.points.emplace_back(n, static_cast<double>(covered) / static_cast<double>(cells));
      while (next_report <= n) next_report *= 2;
    }
  }
  return curve;
}

std::vector<std::string> BatteryConfig::default_tests() {
  return {"monobit", "runs", "chi-square", "serial", "autocorrelation", "approx-entropy"};
}

BatteryReport run_battery(const BitStream& bits, const BatteryConfig& cfg) {
  BatteryReport report;
  report.provenance = bits.provenance;
  report.bit_count = bits.size();
  report.significance = cfg.significance;

  SymbolStream symbols;  // derived lazily for the occupancy tests
  bool have_symbols = false;
  const auto symbol_view = [&]() -> const SymbolStream& {
    if (!have_symbols) {
      symbols = bits_to_symbols(bits, cfg.q);
      have_symbols = true;
    }
    return symbols;
  };

  const auto record = [&](const std::string& name,
                          const std::map<std::string, double>& params, auto&& fn) {
    TestResult r;
    try {
      r = fn();
    } catch (const Error& e) {
      r = TestResult{};
      r.test_name = name;
      r.parameters = params;
      r.n = bits.size();
      r.not_applicable = true;
      r.note = e.what();
    }
    if (r.not_applicable) {
      ++report.not_applicable;
    } else if (r.pass) {
      ++report.passed;
    } else {
      ++report.failed;
    }
    report.results.push_back(std::move(r));
  };

  for (const std::string& name : cfg.tests) {
    if (name == "monobit") {
      record(name, {}, [&] { return monobit(bits, cfg.significance); });
    } else if (name == "runs") {
      record(name, {}, [&] { return runs_test(bits, cfg.significance); });
    } else if (name == "chi-square") {
      record(name, {{"q", cfg.q}},
             [&] { return chi_square_uniformity(symbol_view(), cfg.significance); });
    } else if (name == "serial") {
      for (unsigned dim : cfg.serial_dims) {
        record("serial-" + std::to_string(dim), {{"q", cfg.q}, {"dim", dim}},
               [&] { return serial_test(symbol_view(), dim, cfg.significance); });
      }
    } else if (name == "autocorrelation") {
      for (uint64_t lag : cfg.lags) {
        record("autocorr-" + std::to_string(lag), {{"lag", static_cast<double>(lag)}},
               [&] { return autocorrelation(bits, lag, cfg.significance); });
      }
    } else if (name == "approx-entropy") {
      record(name, {{"m", cfg.apen_m}},
             [&] { return approx_entropy(bits, cfg.apen_m, cfg.significance); });
    } else {
      raise(errc::config_error, "unknown battery test '" + name + "'");
    }
  }
  return report;
}

nlohmann::json report_to_json(const BatteryReport& r) {
  nlohmann::json j;
  j["provenance"] = r.provenance;
  j["bit_count"] = r.bit_count;
  j["significance"] = r.significance;
  j["summary"] = {{"passed", r.passed},
                  {"failed", r.failed},
                  {"not_applicable", r.not_applicable}};
  j["results"] = nlohmann::json::array();
  for (const TestResult& t : r.results) {
    nlohmann::json row;
    row["name"] = t.test_name;
    row["statistic"] = t.statistic;
    row["p_value"] = t.p_value;
    row["n"] = t.n;
    row["pass"] = t.pass;
    row["not_applicable"] = t.not_applicable;
    if (!t.note.empty()) row["note"] = t.note;
    row["parameters"] = t.parameters;
    j["results"].push_back(std::move(row));
  }
  return j;
}

std::string report_to_csv(const BatteryReport& r) {
  std::ostringstream out;
  out << "name,parameters,statistic,p_value,pass\n";
  out.precision(12);
  for (const TestResult& t : r.results) {
    out << t.test_name << ",";
    bool first = true;
    for (const auto& [k, v] : t.parameters) {
      if (!first) out << ' ';
      out << k << '=' << v;
      first = false;
    }
    out << "," << t.statistic << "," << t.p_value << ","
        << (t.not_applicable ? "na" : (t.pass ? "true" : "false")) << "\n";
  }
  return out.str();
}

}  // namespace randkit::battery
