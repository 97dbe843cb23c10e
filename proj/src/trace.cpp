#include "singcubic/trace.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace singcubic {

namespace {

const char* kHeader =
    "iter,effective_epochs,objective,grad_norm,sigma,rho,accepted,wall_time_s";

std::string format_double(double v) {
  if (std::isnan(v)) return "";  // not applicable for this algorithm
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::string emit_csv(const IterationTrace& trace, bool include_timing) {
  std::string out = kHeader;
  out.push_back('\n');
  for (const TraceRecord& r : trace.records) {
    out += std::to_string(r.iter);
    out.push_back(',');
    out += format_double(r.effective_epochs);
    out.push_back(',');
    out += format_double(r.objective);
    out.push_back(',');
    out += format_double(r.grad_norm);
    out.push_back(',');
    out += format_double(r.sigma);
    out.push_back(',');
    out += format_double(r.rho);
    out.push_back(',');
    out += std::to_string(r.accepted);
    out.push_back(',');
    out += format_double(include_timing ? r.wall_time_s : 0.0);
    out.push_back('\n');
  }
  return out;
}

void write_csv_file(const IterationTrace& trace, const std::string& path,
                    bool include_timing) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open trace output: " + path);
  const std::string text = emit_csv(trace, include_timing);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for trace output: " + path);
}

ParsedTrace parse_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open trace file: " + path);
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) != split_csv_line(kHeader)) {
    throw std::invalid_argument("trace schema mismatch in " + path);
  }
  ParsedTrace parsed;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 8) {
      throw std::invalid_argument("trace schema mismatch in " + path +
                                  " at line " + std::to_string(line_no));
    }
    parsed.effective_epochs.push_back(std::stod(fields[1]));
    parsed.objective.push_back(std::stod(fields[2]));
  }
  return parsed;
}

std::string compare_runs(const std::vector<std::string>& csv_paths,
                         int checkpoints) {
  if (csv_paths.size() < 2) {
    throw std::invalid_argument("compare_runs: need at least two trace files");
  }
  if (checkpoints < 2) checkpoints = 2;
  std::vector<ParsedTrace> traces;
  traces.reserve(csv_paths.size());
  double common_max = std::numeric_limits<double>::infinity();
  for (const auto& path : csv_paths) {
    ParsedTrace t = parse_trace_csv(path);
    if (t.effective_epochs.empty()) {
      throw std::invalid_argument("compare_runs: no data rows in " + path);
    }
    common_max = std::min(common_max, t.effective_epochs.back());
    traces.push_back(std::move(t));
  }

  std::ostringstream os;
  os << "effective_epochs";
  for (const auto& path : csv_paths) os << ',' << path;
  os << '\n';
  for (int j = 0; j < checkpoints; ++j) {
    const double e = common_max * j / (checkpoints - 1);
    os << format_double(e);
    for (const ParsedTrace& t : traces) {
      // objective at the last iteration not beyond the checkpoint
      std::size_t idx = 0;
      bool any = false;
      for (std::size_t i = 0; i < t.effective_epochs.size(); ++i) {
        if (t.effective_epochs[i] <= e) {
          idx = i;
          any = true;
        } else {
          break;
        }
      }
      os << ',';
      if (any) os << format_double(t.objective[idx]);
    }
    os << '\n';
  }
  os << "best";
  for (const ParsedTrace& t : traces) {
    double best = t.objective[0];
    for (double v : t.objective) best = std::min(best, v);
    os << ',' << format_double(best);
  }
  os << '\n';
  return os.str();
}

}  // namespace singcubic
