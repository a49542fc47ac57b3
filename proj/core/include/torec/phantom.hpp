#pragma once

#include <string>
#include <vector>

#include "torec/trig_polynomial.hpp"

namespace torec {

// Piecewise-constant test images on [0,2pi)^2, extended 2pi-periodically.
// Every region must lie inside a single period so the closed-form Fourier
// integrals below apply verbatim.

struct RectRegion {
  double a, b;  // x extent [a,b]
  double c, d;  // y extent [c,d]
  double weight;
};

struct DiamondRegion {
  double x0, y0;  // center
  double r;       // |x-x0| + |y-y0| <= r
  double weight;
};

struct Phantom {
  std::vector<RectRegion> rects;
  std::vector<DiamondRegion> diamonds;
  std::string id = "custom";
};

// Default two-region image: rect [1,5]x[2,4] weight -0.75 plus solid diamond
// centered (3,4), radius 1, weight -1.
Phantom paper_phantom();

// Normalized Fourier coefficient (2pi)^{-2} integral of the indicator times
// e^{-i xi.x}. Hermitian symmetry coeff(-xi) == conj(coeff(xi)) holds exactly,
// by sign canonicalization rather than by luck of libm rounding.
cplx rect_coeff(const RectRegion& rc, const FrequencyIndex& xi);
cplx diamond_coeff(const DiamondRegion& dm, const FrequencyIndex& xi);
cplx phantom_coeff(const Phantom& ph, const FrequencyIndex& xi);

// Pointwise value of the piecewise-constant image at x in [0,2pi)^2.
double phantom_value(const Phantom& ph, double x, double y);

// Exact rasterization on the G^2 uniform grid (no Fourier truncation).
GridField phantom_render(const Phantom& ph, int points_per_axis);

// JSON list of {type, params, weight}; see docs/formats in the README.
Phantom phantom_from_json(const std::string& text, const std::string& id);
Phantom phantom_load(const std::string& path);
std::string phantom_to_json(const Phantom& ph);

}  // namespace torec
