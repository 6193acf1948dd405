#include "aclbf/iglim.hpp"

#include <cmath>
#include <stdexcept>

namespace aclbf {

namespace {

// 8-neighborhood in the fixed order used everywhere in this module:
// upper-left, up, upper-right, right, lower-right, down, lower-left, left.
constexpr int kNbrI[8] = {-1, -1, -1, 0, 1, 1, 1, 0};
constexpr int kNbrJ[8] = {-1, 0, 1, 1, 1, 0, -1, -1};

}  // namespace

Field graph_laplacian(const GrayImage& img, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("graph_laplacian: lambda must be non-negative");
  Field lap(img.m1, img.m2);
  for (int j = 0; j < img.m2; ++j)
    for (int i = 0; i < img.m1; ++i) {
      const double c = img(i, j);
      double wsum = 0.0;
      double w[8];
      int ni[8], nj[8];
      int n = 0;
      for (int k = 0; k < 8; ++k) {
        const int ii = i + kNbrI[k];
        const int jj = j + kNbrJ[k];
        if (!img.in_bounds(ii, jj)) continue;  // weights renormalize over in-domain neighbors
        const double d = c - img(ii, jj);
        w[n] = std::exp(lambda * d * d);
        ni[n] = ii;
        nj[n] = jj;
        wsum += w[n];
        ++n;
      }
      // difference form of sum_k c_k I_k - I; identical since the weights
      // sum to one, and exactly zero wherever all neighbors equal the center
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += (w[k] / wsum) * (img(ni[k], nj[k]) - c);
      lap(i, j) = acc;
    }
  return lap;
}

std::vector<double> laplacian_weights(const GrayImage& img, double lambda, int i, int j) {
  if (lambda < 0.0) throw std::invalid_argument("laplacian_weights: lambda must be non-negative");
  std::vector<double> w;
  double wsum = 0.0;
  for (int k = 0; k < 8; ++k) {
    const int ii = i + kNbrI[k];
    const int jj = j + kNbrJ[k];
    if (!img.in_bounds(ii, jj)) continue;
    const double d = img(i, j) - img(ii, jj);
    w.push_back(std::exp(lambda * d * d));
    wsum += w.back();
  }
  for (double& x : w) x /= wsum;
  return w;
}

std::pair<EdgePointSet, EdgePointSet> classify_zero_cross(const Field& lap, double k1,
                                                          double k2) {
  if (k1 < 0.0 || k2 < 0.0)
    throw std::invalid_argument("classify_zero_cross: thresholds must be non-negative");
  const int m1 = lap.m1, m2 = lap.m2;
  // sign classification: +1 for L >= k2, -1 for L <= -k1, 0 in the dead zone
  std::vector<std::int8_t> sgn(static_cast<std::size_t>(m1) * m2, 0);
  for (int j = 0; j < m2; ++j)
    for (int i = 0; i < m1; ++i) {
      const double L = lap(i, j);
      std::int8_t s = 0;
      if (L >= k2) s = 1;
      if (L <= -k1) s = -1;  // k1 = k2 = 0 classifies L = 0 as negative, not a crossing
      sgn[static_cast<std::size_t>(i) + static_cast<std::size_t>(m1) * j] = s;
    }

  EdgePointSet sp{Polarity::positive, PixelSet(m1, m2)};
  EdgePointSet sn{Polarity::negative, PixelSet(m1, m2)};
  for (int j = 0; j < m2; ++j)
    for (int i = 0; i < m1; ++i) {
      const std::int8_t s = sgn[static_cast<std::size_t>(i) + static_cast<std::size_t>(m1) * j];
      if (s == 0) continue;
      bool crossing = false;
      for (int k = 0; k < 8 && !crossing; ++k) {
        const int ii = i + kNbrI[k];
        const int jj = j + kNbrJ[k];
        if (ii < 0 || ii >= m1 || jj < 0 || jj >= m2) continue;
        const std::int8_t t = sgn[static_cast<std::size_t>(ii) + static_cast<std::size_t>(m1) * jj];
        if (t != 0 && t != s) crossing = true;
      }
      if (!crossing) continue;
      if (s > 0)
        sp.points.insert(i, j);
      else
        sn.points.insert(i, j);
    }
  return {sp, sn};
}

EdgePointSet denoise_pass(const EdgePointSet& s) {
  const PixelSet& src = s.points;
  EdgePointSet out{s.polarity, PixelSet(src.m1, src.m2)};
  // corner triples around (i,j): upper-left, upper-right, lower-left, lower-right
  static constexpr int TI[4][3] = {{-1, 0, -1}, {-1, 0, -1}, {1, 0, 1}, {1, 0, 1}};
  static constexpr int TJ[4][3] = {{-1, -1, 0}, {1, 1, 0}, {-1, -1, 0}, {1, 1, 0}};
  auto corner_hit = [&](int i, int j, int c) {
    for (int t = 0; t < 3; ++t)
      if (src.contains(i + TI[c][t], j + TJ[c][t])) return true;
    return false;
  };
  for (int j = 0; j < src.m2; ++j)
    for (int i = 0; i < src.m1; ++i) {
      if (!src.contains(i, j)) continue;
      const bool diag1 = corner_hit(i, j, 0) && corner_hit(i, j, 3);  // upper-left & lower-right
      const bool diag2 = corner_hit(i, j, 1) && corner_hit(i, j, 2);  // upper-right & lower-left
      if (diag1 || diag2) out.points.insert(i, j);
    }
  return out;
}

PixelSet extend_region(const PixelSet& selected, const PixelSet& opposite) {
  if (selected.empty()) throw std::runtime_error("no edges detected");
  PixelSet region(selected.m1, selected.m2);
  for (int j = 0; j < selected.m2; ++j)
    for (int i = 0; i < selected.m1; ++i) {
      if (selected.contains(i, j)) {
        region.insert(i, j);
        continue;
      }
      if (opposite.contains(i, j)) continue;
      for (int k = 0; k < 8; ++k) {
        if (selected.contains(i + kNbrI[k], j + kNbrJ[k])) {
          region.insert(i, j);
          break;
        }
      }
    }
  return region;
}

PhaseField initial_field(const PixelSet& region, int m1, int m2) {
  PhaseField u0(m1, m2, -1.0);
  for (int j = 0; j < m2; ++j)
    for (int i = 0; i < m1; ++i)
      if (region.contains(i, j)) u0(i, j) = 1.0;
  return u0;
}

void IglimParams::validate() const {
  if (lambda < 0.0) throw std::invalid_argument("iglim: lambda must be non-negative");
  if (k1 < 0.0 || k2 < 0.0) throw std::invalid_argument("iglim: k1 and k2 must be non-negative");
  if (passes < 0) throw std::invalid_argument("iglim: denoise passes must be non-negative");
}

IglimResult run_iglim(const GrayImage& img, const IglimParams& params) {
  params.validate();
  const Field lap = graph_laplacian(img, params.lambda);
  auto [sp, sn] = classify_zero_cross(lap, params.k1, params.k2);

  IglimResult res;
  res.n_positive = sp.points.count();
  res.n_negative = sn.points.count();
  if (res.n_positive == 0 && res.n_negative == 0) throw std::runtime_error("no edges detected");

  Polarity side;
  switch (params.side) {
    case SidePolicy::positive:
      side = Polarity::positive;
      break;
    case SidePolicy::negative:
      side = Polarity::negative;
      break;
    default: {
      if (res.n_positive == 0)
        side = Polarity::negative;
      else if (res.n_negative == 0)
        side = Polarity::positive;
      else {
        // pick the set whose members' mean intensity is farther from the
        // global mean; that set hugs the object side of the boundary
        double global = 0.0;
        for (double x : img.v) global += x;
        global /= img.size();
        double mp = 0.0, mn = 0.0;
        for (int j = 0; j < img.m2; ++j)
          for (int i = 0; i < img.m1; ++i) {
            if (sp.points.contains(i, j)) mp += img(i, j);
            if (sn.points.contains(i, j)) mn += img(i, j);
          }
        mp /= res.n_positive;
        mn /= res.n_negative;
        side = std::abs(mp - global) >= std::abs(mn - global) ? Polarity::positive
                                                              : Polarity::negative;
      }
      break;
    }
  }
  res.side = side;

  EdgePointSet chosen = (side == Polarity::positive) ? sp : sn;
  const PixelSet& other = (side == Polarity::positive) ? sn.points : sp.points;
  for (int p = 0; p < params.passes; ++p) chosen = denoise_pass(chosen);

  const PixelSet region = extend_region(chosen.points, other);  // throws when denoised empty
  res.region_size = region.count();
  res.u0 = initial_field(region, img.m1, img.m2);
  return res;
}

}  // namespace aclbf
