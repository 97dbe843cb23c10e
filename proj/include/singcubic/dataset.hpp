#pragma once

#include <map>
#include <string>

#include <Eigen/SparseCore>

#include "singcubic/types.hpp"

namespace singcubic {

// Binary classification dataset with sparse rows, as read from LIBSVM text.
// Labels are kept as parsed until normalize_labels() maps them into {0,1}.
struct Dataset {
  Eigen::SparseMatrix<double, Eigen::RowMajor> X;  // n x p
  Vector y;                                        // n
  std::string provenance;

  int n() const { return static_cast<int>(X.rows()); }
  int p() const { return static_cast<int>(X.cols()); }
};

// Maps raw label values to {0,1}; e.g. {-1 -> 0, +1 -> 1}.
using LabelMapping = std::map<double, double>;

// Parses LIBSVM text: one example per line, "label idx:val idx:val ..." with
// 1-based strictly ascending indices. p is max index seen unless p_override
// is positive. Throws std::invalid_argument naming line/column on malformed
// input or an empty file.
Dataset parse_libsvm(const std::string& text, const std::string& provenance,
                     int p_override = 0);

// Reads a file (gzip-decompressed when the path ends in ".gz") and parses it.
Dataset load_libsvm_file(const std::string& path, int p_override = 0);

// Serializes back to LIBSVM text (1-based indices, label then entries).
std::string to_libsvm(const Dataset& ds);

// Remaps labels in place into {0,1}. Throws std::invalid_argument listing any
// label values the mapping does not cover.
void normalize_labels(Dataset& ds, const LabelMapping& mapping);

// Builds a mapping for the label values present: identity for {0,1},
// {-1,+1}->{0,1}, {1,2}->{0,1}; otherwise throws.
LabelMapping infer_label_mapping(const Dataset& ds);

// Scales each column by its max absolute value (columns of zeros untouched).
void scale_features_maxabs(Dataset& ds);

// Partitions 0..n-1 into contiguous batches of size max(1, ceil(frac*n))
// (the last batch may be smaller). When shuffle_seed is nonnegative the
// indices are shuffled with that seed before cutting.
std::vector<IndexList> make_batches(int n, double batch_frac,
                                    long long shuffle_seed = -1);

}  // namespace singcubic
