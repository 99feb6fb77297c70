#include "randkit/montecarlo.hpp"

#include <cmath>
#include <sstream>

#include "randkit/error.hpp"

namespace randkit::mc {

const char* mc_kind_name(McKind k) {
  switch (k) {
    case McKind::pi_estimate: return "pi-estimate";
    case McKind::integrate_1d: return "integrate-1d";
    case McKind::walk_return: return "walk-return";
  }
  return "?";
}

McKind parse_mc_kind(const std::string& name) {
  if (name == "pi-estimate") return McKind::pi_estimate;
  if (name == "integrate-1d") return McKind::integrate_1d;
  if (name == "walk-return") return McKind::walk_return;
  raise(errc::config_error, "unknown monte carlo task '" + name + "'");
}

double McEstimate::z_score() const {
  if (std_error <= 0.0) return abs_error == 0.0 ? 0.0 : INFINITY;
  return abs_error / std_error;
}

RealSource::RealSource(const GeneratorDescriptor& d) : desc_(d) {
  switch (desc_.kind) {
    case GeneratorDescriptor::Kind::prng:
      prng_ = PrngState::from(desc_.prng);
      real_bits_ = std::min(32u, desc_.prng.word_bits());
      break;
    case GeneratorDescriptor::Kind::hybrid:
      hybrid_ = std::make_unique<HybridGenerator>(desc_.hybrid);
      real_bits_ = 32;
      break;
    case GeneratorDescriptor::Kind::entropy:
      entropy_ = open_source(desc_.entropy);
      real_bits_ = 32;
      break;
  }
}

double RealSource::next() {
  const double scale = std::ldexp(1.0, -static_cast<int>(real_bits_));
  switch (desc_.kind) {
    case GeneratorDescriptor::Kind::prng: {
      auto [next, raw] = prng_next(prng_);
      prng_ = next;
      const uint64_t word = output_word(desc_.prng, raw);
      const unsigned w = desc_.prng.word_bits();
      return static_cast<double>(word >> (w - real_bits_)) * scale;
    }
    case GeneratorDescriptor::Kind::hybrid: {
      const BitStream bits = hybrid_->next_bits(real_bits_);
      uint64_t v = 0;
      for (uint8_t b : bits.bits) v = (v << 1) | b;
      return static_cast<double>(v) * scale;
    }
    case GeneratorDescriptor::Kind::entropy:
      return static_cast<double>(entropy_->take_bits(real_bits_)) * scale;
  }
  raise(errc::config_error, "unknown generator kind");
}

namespace {

McEstimate make_estimate(double estimate, double truth, double std_error, uint64_t n,
                         const GeneratorDescriptor& gen) {
  McEstimate e;
  e.estimate = estimate;
  e.truth = truth;
  e.abs_error = std::fabs(estimate - truth);
  e.std_error = std_error;
  e.n = n;
  e.generator = gen;
  return e;
}

double integrand_truth(const std::string& id) {
  if (id == "x^2") return 1.0 / 3.0;
  if (id == "sin(pi x)") return 2.0 / M_PI;
  if (id == "step") return 0.5;
  raise(errc::config_error, "unknown integrand '" + id + "' (menu: x^2, sin(pi x), step)");
}

double integrand_eval(const std::string& id, double x) {
  if (id == "x^2") return x * x;
  if (id == "sin(pi x)") return std::sin(M_PI * x);
  return x >= 0.5 ? 1.0 : 0.0;  // step
}

// C(steps, steps/2) / 2^steps without overflow: multiply ratio terms.
double walk_return_truth(uint64_t steps) {
  double p = 1.0;
  const uint64_t half = steps / 2;
  for (uint64_t k = 1; k <= half; ++k) {
    p *= static_cast<double>(half + k) / static_cast<double>(k) / 4.0;
  }
  return p;
}

}  // namespace

McEstimate estimate_pi(RealSource& gen, uint64_t n) {
  if (n < 1) raise(errc::config_error, "pi estimate needs n >= 1");
  uint64_t inside = 0;
  for (uint64_t i = 0; i < n; ++i) {
    const double x = gen.next();
    const double y = gen.next();
    if (x * x + y * y < 1.0) ++inside;
  }
  const double p = static_cast<double>(inside) / static_cast<double>(n);
  const double se = 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return make_estimate(4.0 * p, M_PI, se, n, gen.descriptor());
}

McEstimate integrate_1d(RealSource& gen, const std::string& integrand, uint64_t n) {
  if (n < 1) raise(errc::config_error, "integration needs n >= 1");
  const double truth = integrand_truth(integrand);
  double sum = 0.0, sum_sq = 0.0;
  for (uint64_t i = 0; i < n; ++i) {
    const double f = integrand_eval(integrand, gen.next());
    sum += f;
    sum_sq += f * f;
  }
  const double mean = sum / static_cast<double>(n);
  const double var = std::max(0.0, sum_sq / static_cast<double>(n) - mean * mean);
  const double se = std::sqrt(var / static_cast<double>(n));
  return make_estimate(mean, truth, se, n, gen.descriptor());
}

McEstimate walk_return(RealSource& gen, uint64_t steps, uint64_t trials) {
  if (steps % 2 != 0) raise(errc::config_error, "walk length must be even");
  if (steps < 2) raise(errc::config_error, "walk length must be >= 2");
  if (trials < 1) raise(errc::config_error, "walk-return needs trials >= 1");
  uint64_t returned = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    int64_t pos = 0;
    for (uint64_t s = 0; s < steps; ++s) pos += gen.next() < 0.5 ? 1 : -1;
    if (pos == 0) ++returned;
  }
  const double p = static_cast<double>(returned) / static_cast<double>(trials);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return make_estimate(p, walk_return_truth(steps), se, trials, gen.descriptor());
}

McEstimate run_task(const McTask& task, const GeneratorDescriptor& gen, uint64_t n) {
  RealSource src(gen);
  switch (task.kind) {
    case McKind::pi_estimate: return estimate_pi(src, n);
    case McKind::integrate_1d: return integrate_1d(src, task.integrand, n);
    case McKind::walk_return: return walk_return(src, task.walk_steps, n);
  }
  raise(errc::config_error, "unknown monte carlo task");
}

McComparison compare_generators(const McTask& task,
                                const std::vector<GeneratorDescriptor>& gens, uint64_t n) {
  if (gens.size() < 2) {
    raise(errc::config_error, "generator comparison needs at least 2 generators");
  }
  McComparison cmp;
  cmp.task = task;
  cmp.n = n;
  for (const GeneratorDescriptor& g : gens) {
    try {
      cmp.rows.push_back(run_task(task, g, n));
    } catch (const Error& e) {
      McEstimate row;
      row.generator = g;
      row.n = n;
      row.failed = true;
      row.error = e.what();
      cmp.rows.push_back(std::move(row));
    }
  }
  return cmp;
}

nlohmann::json comparison_to_json(const McComparison& c) {
  nlohmann::json j;
  j["task"] = mc_kind_name(c.task.kind);
  if (c.task.kind == McKind::integrate_1d) j["integrand"] = c.task.integrand;
  if (c.task.kind == McKind::walk_return) j["walk_steps"] = c.task.walk_steps;
  j["n"] = c.n;
  j["rows"] = nlohmann::json::array();
  for (const McEstimate& e : c.rows) {
    nlohmann::json row;
    row["generator"] = to_json(e.generator);
    row["label"] = e.generator.display_name();
    if (e.failed) {
      row["failed"] = true;
      row["error"] = e.error;
    } else {
      row["estimate"] = e.estimate;
      row["truth"] = e.truth;
      row["abs_error"] = e.abs_error;
      row["std_error"] = e.std_error;
      row["z"] = e.z_score();
      row["n"] = e.n;
    }
    j["rows"].push_back(std::move(row));
  }
  return j;
}

std::string comparison_to_csv(const McComparison& c) {
  std::ostringstream out;
  out.precision(12);
  out << "generator,task,n,estimate,truth,abs_error,std_error,z,status\n";
  for (const McEstimate& e : c.rows) {
    out << e.generator.display_name() << "," << mc_kind_name(c.task.kind) << "," << c.n << ",";
    if (e.failed) {
      out << ",,,,," << "failed\n";
    } else {
      out << e.estimate << "," << e.truth << "," << e.abs_error << "," << e.std_error << ","
          << e.z_score() << ",ok\n";
    }
  }
  return out.str();
}

}  // namespace randkit::mc
