#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace aclbf {

// 2D scalar field on an M1 x M2 pixel grid, stored column-major:
// entry (i,j) lives at index i + m1*j with row i in [0,m1) and column j
// in [0,m2). In the 1-based convention used throughout the docs this is
// the flattening k = i + M1*(j-1).
struct Field {
  int m1 = 0;  // rows
  int m2 = 0;  // columns
  std::vector<double> v;

  Field() = default;
  Field(int rows, int cols, double fill = 0.0)
      : m1(rows), m2(cols),
        v(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("Field: degenerate dimensions");
  }

  double& operator()(int i, int j) {
    return v[static_cast<std::size_t>(i) + static_cast<std::size_t>(m1) * j];
  }
  double operator()(int i, int j) const {
    return v[static_cast<std::size_t>(i) + static_cast<std::size_t>(m1) * j];
  }

  int size() const { return m1 * m2; }
  bool same_shape(const Field& o) const { return m1 == o.m1 && m2 == o.m2; }
  bool in_bounds(int i, int j) const { return i >= 0 && i < m1 && j >= 0 && j < m2; }
};

// Intensities normalized to [0,1]; enforced by image loading/synthesis.
using GrayImage = Field;
// Unconstrained real-valued segmentation state; sign gives the phase.
using PhaseField = Field;

// Binary {0,1} labels on the same grid (1 = object phase).
struct LabelMask {
  int m1 = 0;
  int m2 = 0;
  std::vector<std::uint8_t> v;

  LabelMask() = default;
  LabelMask(int rows, int cols, std::uint8_t fill = 0)
      : m1(rows), m2(cols),
        v(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}

  std::uint8_t& operator()(int i, int j) {
    return v[static_cast<std::size_t>(i) + static_cast<std::size_t>(m1) * j];
  }
  std::uint8_t operator()(int i, int j) const {
    return v[static_cast<std::size_t>(i) + static_cast<std::size_t>(m1) * j];
  }

  int size() const { return m1 * m2; }
  bool same_shape(const LabelMask& o) const { return m1 == o.m1 && m2 == o.m2; }
  bool operator==(const LabelMask& o) const { return m1 == o.m1 && m2 == o.m2 && v == o.v; }
};

// 0-based column-major flattening and its inverse.
inline int flatten(int i, int j, int m1) { return i + m1 * j; }
inline std::pair<int, int> unflatten(int k, int m1) { return {k % m1, k / m1}; }

}  // namespace aclbf
