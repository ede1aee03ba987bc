#include "prism/ciede2000.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace prism {

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;
constexpr double kRadPerDeg = std::numbers::pi / 180.0;
constexpr double k25Pow7 = 6103515625.0;  // 25^7

double pow7(double v) noexcept {
  const double v2 = v * v;
  const double v3 = v2 * v;
  return v3 * v3 * v;
}

// Hue in degrees, [0, 360). atan2(0, 0) is taken as 0.
double hue_deg(double b, double a) noexcept {
  if (a == 0.0 && b == 0.0) return 0.0;
  double h = std::atan2(b, a) * kDegPerRad;
  if (h < 0.0) h += 360.0;
  return h;
}

}  // namespace

double ciede2000(const LabTriple& x, const LabTriple& y) noexcept {
  const double c1 = std::hypot(x.a, x.b);
  const double c2 = std::hypot(y.a, y.b);
  const double c_bar7 = pow7((c1 + c2) / 2.0);
  const double g = 0.5 * (1.0 - std::sqrt(c_bar7 / (c_bar7 + k25Pow7)));

  const double a1p = (1.0 + g) * x.a;
  const double a2p = (1.0 + g) * y.a;
  const double c1p = std::hypot(a1p, x.b);
  const double c2p = std::hypot(a2p, y.b);
  const double h1p = hue_deg(x.b, a1p);
  const double h2p = hue_deg(y.b, a2p);

  const double dLp = y.l - x.l;
  const double dCp = c2p - c1p;

  const double chroma_product = c1p * c2p;
  double dhp = 0.0;
  if (chroma_product != 0.0) {
    dhp = h2p - h1p;
    if (dhp > 180.0) {
      dhp -= 360.0;
    } else if (dhp < -180.0) {
      dhp += 360.0;
    }
  }
  const double dHp = 2.0 * std::sqrt(chroma_product) * std::sin(dhp / 2.0 * kRadPerDeg);

  const double l_barp = (x.l + y.l) / 2.0;
  const double c_barp = (c1p + c2p) / 2.0;

  double h_barp = h1p + h2p;
  if (chroma_product != 0.0) {
    if (std::abs(h1p - h2p) <= 180.0) {
      h_barp /= 2.0;
    } else if (h1p + h2p < 360.0) {
      h_barp = (h1p + h2p + 360.0) / 2.0;
    } else {
      h_barp = (h1p + h2p - 360.0) / 2.0;
    }
  }

  const double t = 1.0 - 0.17 * std::cos((h_barp - 30.0) * kRadPerDeg) +
                   0.24 * std::cos((2.0 * h_barp) * kRadPerDeg) +
                   0.32 * std::cos((3.0 * h_barp + 6.0) * kRadPerDeg) -
                   0.20 * std::cos((4.0 * h_barp - 63.0) * kRadPerDeg);

  const double d_theta = 30.0 * std::exp(-std::pow((h_barp - 275.0) / 25.0, 2.0));
  const double c_barp7 = pow7(c_barp);
  const double rc = 2.0 * std::sqrt(c_barp7 / (c_barp7 + k25Pow7));

  const double l50 = (l_barp - 50.0) * (l_barp - 50.0);
  const double sl = 1.0 + 0.015 * l50 / std::sqrt(20.0 + l50);
  const double sc = 1.0 + 0.045 * c_barp;
  const double sh = 1.0 + 0.015 * c_barp * t;
  const double rt = -std::sin(2.0 * d_theta * kRadPerDeg) * rc;

  const double tl = dLp / sl;
  const double tc = dCp / sc;
  const double th = dHp / sh;
  // |rt| <= 2, so the sum is mathematically >= tl^2; clamp rounding noise.
  return std::sqrt(std::max(0.0, tl * tl + tc * tc + th * th + rt * tc * th));
}

}  // namespace prism
