#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "patrelax/poly.hpp"

namespace patrelax {

struct OracleConfig {
  std::size_t grid_points = 201;
  int polish_steps = 100;
  int restarts = 20;
  std::uint64_t seed = 0;
};

struct OracleMinimum {
  double value = 0.0;
  std::vector<double> argmin;
};

class OracleSizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Brute-force global minimization on a box: tensor grid, then coordinate-wise
/// golden-section descent from the best grid point and from random restarts.
/// The returned value is attained, so it bounds the true minimum from above.
OracleMinimum grid_min(const SparsePolynomial& f, const BoxDomain& box,
                       const OracleConfig& config = {});

/// max f - min f from two grid_min runs. Never exceeds the true width.
double width_ref(const SparsePolynomial& f, const BoxDomain& box, const OracleConfig& config = {});

struct HullDistance {
  bool inside = false;
  double l1_distance = 0.0;
  std::vector<double> weights;
};

/// min || v - sum_i lambda_i p_i ||_1 over the simplex, solved as an LP.
HullDistance hull_membership(const std::vector<std::vector<double>>& points,
                             std::span<const double> v);

/// Uniform double in [0, 1) from the top 53 bits of one 64-bit draw.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace patrelax
