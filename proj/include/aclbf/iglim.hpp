#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "aclbf/field.hpp"

namespace aclbf {

enum class Polarity { positive, negative };

// Pixel membership bitmap on the image grid.
struct PixelSet {
  int m1 = 0;
  int m2 = 0;
  std::vector<std::uint8_t> in;

  PixelSet() = default;
  PixelSet(int rows, int cols)
      : m1(rows), m2(cols),
        in(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0) {}

  bool contains(int i, int j) const {
    return i >= 0 && i < m1 && j >= 0 && j < m2 &&
           in[static_cast<std::size_t>(i) + static_cast<std::size_t>(m1) * j] != 0;
  }
  void insert(int i, int j) {
    in[static_cast<std::size_t>(i) + static_cast<std::size_t>(m1) * j] = 1;
  }
  int count() const {
    int n = 0;
    for (auto b : in) n += b;
    return n;
  }
  bool empty() const { return count() == 0; }
};

struct EdgePointSet {
  Polarity polarity = Polarity::positive;
  PixelSet points;
};

// Intensity-adaptive graph Laplacian over the 8-neighborhood:
// L(x) = sum_k c_k I_k - I with weights c_k proportional to
// exp(lambda (I - I_k)^2), normalized over the in-domain neighbors.
// Identically zero on constant images; with lambda = 0 it reduces to the
// homogeneous 8-neighbor average-minus-center stencil.
// Throws std::invalid_argument for lambda < 0.
Field graph_laplacian(const GrayImage& img, double lambda);

// Normalized neighbor weights c_k at pixel (i,j) in the fixed neighbor order
// (only in-domain neighbors appear). Diagnostic companion of graph_laplacian.
std::vector<double> laplacian_weights(const GrayImage& img, double lambda, int i, int j);

// Splits the signed Laplacian field into positive (L >= k2) and negative
// (L <= -k1) zero-cross sets: a signed pixel belongs to a set only if at
// least one 8-neighbor carries the opposite sign. Pixels in the dead zone
// (-k1, k2) are unsigned and neither create nor receive crossings.
std::pair<EdgePointSet, EdgePointSet> classify_zero_cross(const Field& lap, double k1,
                                                          double k2);

// One diagonal-connectivity denoising pass: a point survives when the two
// corner triples on one diagonal (upper-left with lower-right, or
// upper-right with lower-left) each contain another member. Reads the
// pre-pass set only, so removals do not cascade within a pass.
EdgePointSet denoise_pass(const EdgePointSet& s);

// Region grown from the selected edge set: the set itself plus every pixel
// that has an 8-neighbor in it and does not belong to the opposite set.
// Throws std::runtime_error("no edges detected") when `selected` is empty.
PixelSet extend_region(const PixelSet& selected, const PixelSet& opposite);

// +1 on the region, -1 elsewhere.
PhaseField initial_field(const PixelSet& region, int m1, int m2);

enum class SidePolicy { automatic, positive, negative };

struct IglimParams {
  double lambda = 50.0;
  double k1 = 0.01;
  double k2 = 0.01;
  int passes = 1;  // denoising repetitions applied to the selected side
  SidePolicy side = SidePolicy::automatic;
  void validate() const;
};

struct IglimResult {
  PhaseField u0;
  Polarity side = Polarity::positive;
  int n_positive = 0;  // raw zero-cross counts before denoising
  int n_negative = 0;
  int region_size = 0;
};

// Full initialization pipeline: Laplacian, zero-cross classification, side
// selection, denoising of the selected side, region extension, and the
// final two-valued field. The automatic side rule picks the set whose mean
// image intensity lies farther from the global mean (the inner boundary of
// a dark object on a bright background, and vice versa).
IglimResult run_iglim(const GrayImage& img, const IglimParams& params);

}  // namespace aclbf
