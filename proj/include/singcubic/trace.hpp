#pragma once

#include <limits>
#include <string>
#include <vector>

#include "singcubic/types.hpp"

namespace singcubic {

// One row per outer iteration. NaN marks fields an algorithm does not have
// (e.g. rho for sgd); they are printed as empty CSV fields. For tr the sigma
// column carries the trust radius.
struct TraceRecord {
  long long iter = 0;
  double effective_epochs = 0.0;
  double objective = 0.0;
  double grad_norm = 0.0;
  double sigma = std::numeric_limits<double>::quiet_NaN();
  double rho = std::numeric_limits<double>::quiet_NaN();
  int accepted = 0;
  double wall_time_s = 0.0;
};

// Effective epochs charge |S|/n per component-batch evaluation, gradients and
// Hessians counted separately and summed for the CSV column. Function-value
// evaluations (acceptance tests, trace objectives, gradient-norm reporting)
// are observer work and are not charged.
struct IterationTrace {
  std::vector<TraceRecord> records;
  double grad_epochs = 0.0;
  double hess_epochs = 0.0;

  double effective_epochs() const { return grad_epochs + hess_epochs; }
};

// CSV with header iter,effective_epochs,objective,grad_norm,sigma,rho,
// accepted,wall_time_s; floats at 17 significant digits, LF line endings.
// Wall times are written as 0 unless include_timing is set, keeping seeded
// traces byte-identical across runs.
std::string emit_csv(const IterationTrace& trace, bool include_timing = false);
void write_csv_file(const IterationTrace& trace, const std::string& path,
                    bool include_timing = false);

// Parsed trace file for comparisons.
struct ParsedTrace {
  std::vector<double> effective_epochs;
  std::vector<double> objective;
};
ParsedTrace parse_trace_csv(const std::string& path);

// Aligns >= 2 trace files on a shared effective-epoch grid (the objective at
// the last iteration not beyond each checkpoint) and appends per-file best
// objectives. Output is itself CSV, one column per input file.
std::string compare_runs(const std::vector<std::string>& csv_paths,
                         int checkpoints = 21);

}  // namespace singcubic
