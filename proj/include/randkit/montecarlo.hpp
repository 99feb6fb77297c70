#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "randkit/descriptor.hpp"

namespace randkit::mc {

enum class McKind { pi_estimate, integrate_1d, walk_return };

const char* mc_kind_name(McKind k);
McKind parse_mc_kind(const std::string& name);

struct McTask {
  McKind kind = McKind::pi_estimate;
  std::string integrand = "x^2";  // integrate-1d menu: x^2, sin(pi x), step
  uint64_t walk_steps = 64;       // walk-return; must be even
};

struct McEstimate {
  double estimate = 0.0;
  double truth = 0.0;
  double abs_error = 0.0;
  double std_error = 0.0;
  uint64_t n = 0;
  GeneratorDescriptor generator;
  bool failed = false;   // row-level error in a comparison run
  std::string error;

  double z_score() const;  // abs_error / std_error
};

// Uniform [0,1) draws from any generator pipeline. Deterministic generators
// map each output word's top min(word_bits, 32) bits to a real; hybrid and
// entropy pipelines consume 32 bits per draw.
class RealSource {
 public:
  explicit RealSource(const GeneratorDescriptor& d);
  double next();
  const GeneratorDescriptor& descriptor() const { return desc_; }

 private:
  GeneratorDescriptor desc_;
  // exactly one backend is active, per desc_.kind
  PrngState prng_;
  std::unique_ptr<HybridGenerator> hybrid_;
  std::unique_ptr<EntropySource> entropy_;
  unsigned real_bits_ = 32;
};

// 4 * fraction of sample pairs inside the unit quarter-circle.
McEstimate estimate_pi(RealSource& gen, uint64_t n);

// Sample mean of the menu integrand over uniform draws.
// Closed-form truths: x^2 -> 1/3, sin(pi x) -> 2/pi, step -> 1/2.
McEstimate integrate_1d(RealSource& gen, const std::string& integrand, uint64_t n);

// Probability a +-1 walk returns to the origin after `steps` steps
// (draw < 0.5 steps +1). Truth C(steps, steps/2) / 2^steps.
McEstimate walk_return(RealSource& gen, uint64_t steps, uint64_t trials);

McEstimate run_task(const McTask& task, const GeneratorDescriptor& gen, uint64_t n);

struct McComparison {
  McTask task;
  uint64_t n = 0;
  std::vector<McEstimate> rows;  // one per generator, failures marked, never dropped
};

McComparison compare_generators(const McTask& task,
                                const std::vector<GeneratorDescriptor>& gens, uint64_t n);

nlohmann::json comparison_to_json(const McComparison& c);
std::string comparison_to_csv(const McComparison& c);

}  // namespace randkit::mc
