#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aclbf/driver.hpp"
#include "aclbf/field.hpp"

namespace aclbf {

// Synthetic test image with its ground-truth object mask.
struct SynthPair {
  GrayImage image;
  LabelMask truth;
};

// Filled disk of intensity fg centered in a size x size grid on background bg.
SynthPair make_disk(int size, double radius, double fg, double bg);

// Disk with an additive linear illumination ramp across the columns:
// intensity = base + gradient * (j/(M2-1) - 1/2), clamped to [0,1]. Object and
// background each span a range, so no global threshold separates them once
// the ramp exceeds their contrast.
SynthPair make_ramp_disk(int size, double radius, double fg, double bg, double gradient);

// Sinusoidal tube: pixels within half_width of the curve
// i = M1/2 + amplitude * sin(2 pi cycles j / M2) are object.
SynthPair make_vessel(int size, double half_width, double amplitude, double cycles, double fg,
                      double bg);

// Adds zero-mean Gaussian noise of the given variance on the 0..255 intensity
// scale (i.e. stddev sqrt(var)/255 in normalized units), clamped to [0,1].
// Deterministic for a fixed seed.
void add_gaussian_noise(GrayImage& img, double variance255, std::uint64_t seed);

// Snaps intensities to the 8-bit grid k/255, exactly what a PGM round trip does.
void quantize_to_8bit(GrayImage& img);

// A named fixture with the solver configuration it is meant to be run with.
struct Fixture {
  std::string name;
  SynthPair data;
  RunConfig config;
};

// The bundled fixture suite used by the benchmark harness and the acceptance
// tests: a clean disk, a ramp-illuminated disk, noisy disks at variance 100
// and 300 (0..255 scale), and a vessel-like tube.
std::vector<Fixture> standard_fixtures();

}  // namespace aclbf
