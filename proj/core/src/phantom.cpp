#include "torec/phantom.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "torec/errors.hpp"

namespace torec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate_rect(const RectRegion& rc) {
  if (!(rc.a < rc.b) || !(rc.c < rc.d)) throw ParameterError("rect: need a < b and c < d");
  if (rc.a < 0.0 || rc.b > kTwoPi || rc.c < 0.0 || rc.d > kTwoPi)
    throw ParameterError("rect: region must lie inside [0, 2pi]^2");
}

void validate_diamond(const DiamondRegion& dm) {
  if (!(dm.r > 0.0)) throw ParameterError("diamond: radius must be positive");
  if (dm.x0 - dm.r < 0.0 || dm.x0 + dm.r > kTwoPi || dm.y0 - dm.r < 0.0 || dm.y0 + dm.r > kTwoPi)
    throw ParameterError("diamond: region must lie inside [0, 2pi]^2");
}

// (2pi)^{-1} integral_a^b e^{-ikx} dx for k >= 0; negative k by conjugation.
cplx interval_factor(double a, double b, int k) {
  if (k == 0) return cplx{(b - a) / kTwoPi, 0.0};
  const bool neg = k < 0;
  const int ka = neg ? -k : k;
  const cplx ea{std::cos(ka * a), -std::sin(ka * a)};
  const cplx eb{std::cos(ka * b), -std::sin(ka * b)};
  const cplx v = (ea - eb) / cplx{0.0, kTwoPi * double(ka)};
  return neg ? std::conj(v) : v;
}

// integral_{-r}^{r} e^{-ipw/2} dp = 2 sin(rw/2)/(w/2); real and even in w.
double sinc_slab(double r, int w) {
  if (w == 0) return 2.0 * r;
  const double half = 0.5 * double(std::abs(w));
  return 2.0 * std::sin(r * half) / half;
}

bool sign_canonical(const FrequencyIndex& xi) {
  for (int c : xi)
    if (c != 0) return c > 0;
  return true;  // zero vector
}

}  // namespace

Phantom paper_phantom() {
  Phantom ph;
  ph.rects.push_back(RectRegion{1.0, 5.0, 2.0, 4.0, -0.75});
  ph.diamonds.push_back(DiamondRegion{3.0, 4.0, 1.0, -1.0});
  ph.id = "paper";
  return ph;
}

cplx rect_coeff(const RectRegion& rc, const FrequencyIndex& xi) {
  if (xi.size() != 2) throw ParameterError("rect_coeff: expects d = 2");
  validate_rect(rc);
  return rc.weight * interval_factor(rc.a, rc.b, xi[0]) * interval_factor(rc.c, rc.d, xi[1]);
}

cplx diamond_coeff(const DiamondRegion& dm, const FrequencyIndex& xi) {
  if (xi.size() != 2) throw ParameterError("diamond_coeff: expects d = 2");
  validate_diamond(dm);
  // Rotated coordinates p = s+t, q = s-t turn the diamond into the square
  // max(|p|,|q|) <= r with Jacobian 1/2; the integral factorizes.
  if (!sign_canonical(xi)) return std::conj(diamond_coeff(dm, negate(xi)));
  const int u = xi[0] + xi[1];
  const int v = xi[0] - xi[1];
  const double theta = xi[0] * dm.x0 + xi[1] * dm.y0;
  const cplx phase{std::cos(theta), -std::sin(theta)};
  const double box = 0.5 * sinc_slab(dm.r, u) * sinc_slab(dm.r, v);
  return dm.weight * phase * box / (kTwoPi * kTwoPi);
}

cplx phantom_coeff(const Phantom& ph, const FrequencyIndex& xi) {
  if (xi.size() != 2) throw ParameterError("phantom_coeff: expects d = 2");
  if (!sign_canonical(xi)) return std::conj(phantom_coeff(ph, negate(xi)));
  cplx acc{0.0, 0.0};
  for (const auto& rc : ph.rects) acc += rect_coeff(rc, xi);
  for (const auto& dm : ph.diamonds) acc += diamond_coeff(dm, xi);
  return acc;
}

double phantom_value(const Phantom& ph, double x, double y) {
  double v = 0.0;
  for (const auto& rc : ph.rects)
    if (x >= rc.a && x <= rc.b && y >= rc.c && y <= rc.d) v += rc.weight;
  for (const auto& dm : ph.diamonds)
    if (std::abs(x - dm.x0) + std::abs(y - dm.y0) <= dm.r) v += dm.weight;
  return v;
}

GridField phantom_render(const Phantom& ph, int points_per_axis) {
  const int G = points_per_axis;
  if (G < 1) throw ParameterError("phantom_render: G must be positive");
  for (const auto& rc : ph.rects) validate_rect(rc);
  for (const auto& dm : ph.diamonds) validate_diamond(dm);
  GridField out;
  out.dim = 2;
  out.points_per_axis = G;
  out.values.resize(std::size_t(G) * std::size_t(G));
  const double h = kTwoPi / double(G);
  for (int i = 0; i < G; ++i)
    for (int j = 0; j < G; ++j)
      out.values[std::size_t(i) * G + j] = phantom_value(ph, i * h, j * h);
  return out;
}

Phantom phantom_from_json(const std::string& text, const std::string& id) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("phantom spec: invalid JSON: ") + e.what());
  }
  if (!j.is_array()) throw IoError("phantom spec: top level must be a list of regions");
  Phantom ph;
  ph.id = id;
  try {
    for (const auto& r : j) {
      const std::string type = r.at("type").get<std::string>();
      const auto& p = r.at("params");
      const double w = r.at("weight").get<double>();
      if (type == "rect") {
        ph.rects.push_back(RectRegion{p.at("a").get<double>(), p.at("b").get<double>(),
                                      p.at("c").get<double>(), p.at("d").get<double>(), w});
        validate_rect(ph.rects.back());
      } else if (type == "diamond") {
        ph.diamonds.push_back(DiamondRegion{p.at("x0").get<double>(), p.at("y0").get<double>(),
                                            p.at("r").get<double>(), w});
        validate_diamond(ph.diamonds.back());
      } else {
        throw ParameterError("phantom spec: unknown region type '" + type + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("phantom spec: missing or malformed field: ") + e.what());
  }
  if (ph.rects.empty() && ph.diamonds.empty()) throw ParameterError("phantom spec: no regions");
  return ph;
}

Phantom phantom_load(const std::string& path) {
  if (path == "paper") return paper_phantom();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("phantom spec: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return phantom_from_json(ss.str(), path);
}

std::string phantom_to_json(const Phantom& ph) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& rc : ph.rects)
    j.push_back({{"type", "rect"},
                 {"params", {{"a", rc.a}, {"b", rc.b}, {"c", rc.c}, {"d", rc.d}}},
                 {"weight", rc.weight}});
  for (const auto& dm : ph.diamonds)
    j.push_back({{"type", "diamond"},
                 {"params", {{"x0", dm.x0}, {"y0", dm.y0}, {"r", dm.r}}},
                 {"weight", dm.weight}});
  return j.dump(2) + "\n";
}

}  // namespace torec
