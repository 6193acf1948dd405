#pragma once

#include <string>
#include <vector>

#include "aclbf/etd.hpp"
#include "aclbf/field.hpp"
#include "aclbf/iglim.hpp"
#include "aclbf/model.hpp"

namespace aclbf {

enum class Scheme { etd1, etdrk2 };

struct RunConfig {
  ModelParams model;
  IglimParams iglim;
  Scheme scheme = Scheme::etdrk2;
  StabilizerPolicy stabilizer;
  int max_iters = 500;
  // Energy monitor: ETD1 allows a 1e-8 relative increase per step (round-off),
  // ETDRK2 the absolute slack below. Violations are diagnostics unless
  // strict_energy, which turns them into hard errors.
  double energy_slack = 1e-4;
  bool strict_energy = false;
  void validate() const;
};

struct EnergySample {
  int iter = 0;
  double energy = 0.0;
  double wall_ms = 0.0;  // elapsed since the start of the run
};

struct RunResult {
  PhaseField u;
  LabelMask mask;  // u > 0
  int iterations = 0;
  bool converged = false;
  std::vector<EnergySample> trace;  // iterations + 1 samples, trace[0] = initial energy
  // initialization diagnostics
  Polarity side = Polarity::positive;
  int edges_positive = 0;
  int edges_negative = 0;
  int region_size = 0;
  int guarded_pixels = 0;  // fit-denominator guard activations over the run
  double wall_ms = 0.0;
};

// Label 1 where u > 0, 0 elsewhere.
LabelMask binarize(const PhaseField& u);

// Overlap coefficient 2|a & b| / (|a| + |b|); 1 when both masks are empty.
double dice(const LabelMask& a, const LabelMask& b);

// Alternating minimization: initialize u from the graph-Laplacian edge
// detector, then per iteration refit f1/f2 at the current u, rebuild the
// force fields and (in automatic mode) the stabilizer, take one exponential
// step, and stop as soon as the binarized mask stops changing. The energy of
// iteration n is recorded with that iteration's fits, making the trace the
// monotone quantity of the scheme's stability bound.
RunResult segment(const GrayImage& img, const RunConfig& cfg);

// CSV with header iter,energy,wall_ms and one row per recorded sample.
void write_energy_csv(const std::vector<EnergySample>& trace, const std::string& path);

}  // namespace aclbf
