#include "singcubic/dataset.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <zlib.h>

namespace singcubic {

namespace {

struct Entry {
  int index;  // 1-based as in the file
  double value;
};

[[noreturn]] void parse_fail(const std::string& what, int line, int column) {
  std::ostringstream os;
  os << "libsvm parse error at line " << line << ", column " << column << ": "
     << what;
  throw std::invalid_argument(os.str());
}

double parse_double(const char* begin, const char* end, int line, int column) {
  errno = 0;
  char* stop = nullptr;
  const double v = std::strtod(begin, &stop);
  if (stop != end || begin == end || errno == ERANGE || !std::isfinite(v)) {
    parse_fail("non-numeric token '" + std::string(begin, end) + "'", line,
               column);
  }
  return v;
}

long parse_index(const char* begin, const char* end, int line, int column) {
  errno = 0;
  char* stop = nullptr;
  const long v = std::strtol(begin, &stop, 10);
  if (stop != end || begin == end || errno == ERANGE) {
    parse_fail("non-numeric index '" + std::string(begin, end) + "'", line,
               column);
  }
  return v;
}

}  // namespace

Dataset parse_libsvm(const std::string& text, const std::string& provenance,
                     int p_override) {
  std::vector<double> labels;
  std::vector<std::vector<Entry>> rows;
  int max_index = 0;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string_view line(text.data() + pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::size_t line_start = pos;
    pos = eol + 1;
    ++line_no;

    // Skip blank lines.
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    std::vector<Entry> entries;
    double label = 0.0;
    bool saw_label = false;
    int prev_index = 0;

    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      const int column = static_cast<int>(i) + 1;
      const char* tok_begin = line.data() + i;
      const char* tok_end = line.data() + j;
      if (!saw_label) {
        label = parse_double(tok_begin, tok_end, line_no, column);
        saw_label = true;
      } else {
        const char* colon = std::find(tok_begin, tok_end, ':');
        if (colon == tok_end) {
          parse_fail("expected idx:val, got '" +
                         std::string(tok_begin, tok_end) + "'",
                     line_no, column);
        }
        const long idx = parse_index(tok_begin, colon, line_no, column);
        if (idx < 1) parse_fail("index must be >= 1", line_no, column);
        if (idx <= prev_index) {
          parse_fail("non-ascending index " + std::to_string(idx), line_no,
                     column);
        }
        const double value =
            parse_double(colon + 1, tok_end, line_no,
                         column + static_cast<int>(colon + 1 - tok_begin));
        entries.push_back({static_cast<int>(idx), value});
        prev_index = static_cast<int>(idx);
        max_index = std::max(max_index, static_cast<int>(idx));
      }
      i = j;
    }
    if (!saw_label) parse_fail("missing label", line_no, 1);
    labels.push_back(label);
    rows.push_back(std::move(entries));
    (void)line_start;
  }

  if (rows.empty()) {
    throw std::invalid_argument("libsvm parse error: empty input ('" +
                                provenance + "')");
  }

  int p = p_override > 0 ? p_override : max_index;
  if (p_override > 0 && max_index > p_override) {
    throw std::invalid_argument(
        "libsvm parse error: feature index " + std::to_string(max_index) +
        " exceeds requested dimension " + std::to_string(p_override));
  }

  Dataset ds;
  const int n = static_cast<int>(rows.size());
  ds.X.resize(n, p);
  std::vector<Eigen::Triplet<double>> triplets;
  std::size_t nnz = 0;
  for (const auto& r : rows) nnz += r.size();
  triplets.reserve(nnz);
  for (int r = 0; r < n; ++r) {
    for (const Entry& e : rows[r]) {
      triplets.emplace_back(r, e.index - 1, e.value);
    }
  }
  ds.X.setFromTriplets(triplets.begin(), triplets.end());
  ds.X.makeCompressed();
  ds.y = Eigen::Map<const Vector>(labels.data(), n);
  ds.provenance = provenance;
  return ds;
}

namespace {

std::string read_plain(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open dataset file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string read_gzip(const std::string& path) {
  gzFile f = gzopen(path.c_str(), "rb");
  if (f == nullptr) {
    throw std::invalid_argument("cannot open gzip dataset file: " + path);
  }
  std::string out;
  char buf[1 << 16];
  int got = 0;
  while ((got = gzread(f, buf, sizeof(buf))) > 0) {
    out.append(buf, static_cast<std::size_t>(got));
  }
  const bool ok = got == 0;
  gzclose(f);
  if (!ok) throw std::invalid_argument("gzip read error in " + path);
  return out;
}

}  // namespace

Dataset load_libsvm_file(const std::string& path, int p_override) {
  const bool gz = path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
  const std::string text = gz ? read_gzip(path) : read_plain(path);
  return parse_libsvm(text, path, p_override);
}

std::string to_libsvm(const Dataset& ds) {
  std::ostringstream os;
  os.precision(17);
  for (int r = 0; r < ds.n(); ++r) {
    os << ds.y[r];
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(ds.X, r);
         it; ++it) {
      os << ' ' << (it.col() + 1) << ':' << it.value();
    }
    os << '\n';
  }
  return os.str();
}

void normalize_labels(Dataset& ds, const LabelMapping& mapping) {
  std::set<double> unmapped;
  for (int i = 0; i < ds.n(); ++i) {
    auto it = mapping.find(ds.y[i]);
    if (it == mapping.end()) {
      unmapped.insert(ds.y[i]);
    }
  }
  if (!unmapped.empty()) {
    std::ostringstream os;
    os << "unmapped label values:";
    for (double v : unmapped) os << ' ' << v;
    throw std::invalid_argument(os.str());
  }
  for (int i = 0; i < ds.n(); ++i) {
    const double mapped = mapping.at(ds.y[i]);
    if (mapped != 0.0 && mapped != 1.0) {
      throw std::invalid_argument("label mapping must target {0,1}");
    }
    ds.y[i] = mapped;
  }
}

LabelMapping infer_label_mapping(const Dataset& ds) {
  std::set<double> values;
  for (int i = 0; i < ds.n(); ++i) values.insert(ds.y[i]);
  const std::set<double> zero_one = {0.0, 1.0};
  if (std::includes(zero_one.begin(), zero_one.end(), values.begin(),
                    values.end())) {
    return {{0.0, 0.0}, {1.0, 1.0}};
  }
  if (values == std::set<double>{-1.0, 1.0}) return {{-1.0, 0.0}, {1.0, 1.0}};
  if (values == std::set<double>{1.0, 2.0}) return {{1.0, 0.0}, {2.0, 1.0}};
  std::ostringstream os;
  os << "cannot infer a {0,1} label mapping for values:";
  for (double v : values) os << ' ' << v;
  os << " (pass an explicit mapping)";
  throw std::invalid_argument(os.str());
}

void scale_features_maxabs(Dataset& ds) {
  Vector maxabs = Vector::Zero(ds.p());
  for (int r = 0; r < ds.n(); ++r) {
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(ds.X, r);
         it; ++it) {
      maxabs[it.col()] = std::max(maxabs[it.col()], std::abs(it.value()));
    }
  }
  for (int r = 0; r < ds.n(); ++r) {
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(ds.X, r);
         it; ++it) {
      if (maxabs[it.col()] > 0) it.valueRef() /= maxabs[it.col()];
    }
  }
}

std::vector<IndexList> make_batches(int n, double batch_frac,
                                    long long shuffle_seed) {
  if (n < 1) throw std::invalid_argument("make_batches: n must be >= 1");
  if (!(batch_frac > 0.0) || batch_frac > 1.0) {
    throw std::invalid_argument("make_batches: batch_frac must be in (0, 1]");
  }
  const int b = std::max(1, static_cast<int>(std::ceil(batch_frac * n)));
  IndexList order(n);
  std::iota(order.begin(), order.end(), 0);
  if (shuffle_seed >= 0) {
    Rng rng(static_cast<std::uint64_t>(shuffle_seed));
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::vector<IndexList> batches;
  for (int start = 0; start < n; start += b) {
    const int stop = std::min(n, start + b);
    batches.emplace_back(order.begin() + start, order.begin() + stop);
  }
  return batches;
}

}  // namespace singcubic
