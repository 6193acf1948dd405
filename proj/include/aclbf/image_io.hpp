#pragma once

#include <string>

#include "aclbf/field.hpp"

namespace aclbf {

// Reads an 8-bit binary PGM (P5) and normalizes intensities by 255 into
// [0,1]. Color (P6/PPM) and >8-bit files are rejected, not converted.
// Throws std::runtime_error on unreadable files, unsupported formats or
// dimensions smaller than 3x3.
GrayImage load_gray(const std::string& path);

// Writes intensities in [0,1] as binary PGM, quantized with round(v*255).
void write_gray(const GrayImage& img, const std::string& path);

// Writes a binary mask as PGM with object=255, background=0. Round-trips
// bit-exactly through load_gray followed by thresholding at 0.5.
void write_mask(const LabelMask& mask, const std::string& path);

// Thresholds a loaded [0,1] image at 0.5 into a mask (inverse of write_mask).
LabelMask threshold_mask(const GrayImage& img);

// Writes an RGB PPM (P6) where every pixel having at least one 4-neighbor of
// the opposite label is painted pure red; all other pixels replicate the gray
// intensity to three channels.
void overlay_contour(const GrayImage& img, const LabelMask& mask, const std::string& path);

}  // namespace aclbf
