#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace singcubic {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Component indices are 0-based everywhere in the library; the LIBSVM text
// format and error messages use the 1-based convention of the file format.
using IndexSpan = std::span<const int>;
using IndexList = std::vector<int>;

using Rng = std::mt19937_64;

}  // namespace singcubic
