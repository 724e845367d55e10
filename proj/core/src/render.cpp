#include "isores/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "isores/errors.hpp"

namespace isores {

std::string render_slice(const DiscreteSet& E, const Grid& g, int k) {
  if (g.dim == 3 && (k < 0 || k >= g.shape[2])) throw InputError("slice index outside the grid");
  if (g.dim == 2) k = 0;
  if (E.in.size() != g.size()) throw InputError("set does not match the grid");
  const int W = g.shape[0], H = g.shape[1];
  std::string out = "P5\n" + std::to_string(W) + " " + std::to_string(H) + "\n255\n";
  out.reserve(out.size() + static_cast<std::size_t>(W) * static_cast<std::size_t>(H));
  for (int j = H - 1; j >= 0; --j) {
    for (int i = 0; i < W; ++i) {
      const std::size_t idx = g.index(i, j, k);
      unsigned char px = 255;
      if (E.in[idx]) px = 0;
      else if (g.labels[idx] == Cell::kObstacle) px = 128;
      else if (g.labels[idx] == Cell::kOutside) px = 224;
      out.push_back(static_cast<char>(px));
    }
  }
  return out;
}

int slice_index(const Grid& g, double z) {
  if (g.dim != 3) return 0;
  const double t = (z - g.origin(2)) / g.pitch + 0.5;
  return std::clamp(static_cast<int>(std::floor(t)), 0, g.shape[2] - 1);
}

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_loglog(const std::vector<ProfilePoint>& points, const ScalingFit& fit, int dstar,
                          int dim, const LoglogOptions& opt) {
  std::vector<double> lx, ly;
  for (const auto& p : points)
    if (p.v > 0.0 && p.residue > 0.0 && std::isfinite(p.residue)) {
      lx.push_back(std::log10(p.v));
      ly.push_back(std::log10(p.residue));
    }
  const double W = opt.width, H = opt.height, m = 60.0;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!lx.empty()) {
    x0 = *std::min_element(lx.begin(), lx.end());
    x1 = *std::max_element(lx.begin(), lx.end());
    y0 = *std::min_element(ly.begin(), ly.end());
    y1 = *std::max_element(ly.begin(), ly.end());
  }
  if (x1 - x0 < 1e-9) { x0 -= 0.5; x1 += 0.5; }
  if (y1 - y0 < 1e-9) { y0 -= 0.5; y1 += 0.5; }
  const double px = 0.05 * (x1 - x0), py = 0.1 * (y1 - y0);
  x0 -= px; x1 += px; y0 -= py; y1 += py;
  auto X = [&](double x) { return m + (x - x0) / (x1 - x0) * (W - 2 * m); };
  auto Y = [&](double y) { return H - m - (y - y0) / (y1 - y0) * (H - 2 * m); };

  double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  if (!lx.empty()) {
    cx = cy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) { cx += lx[i]; cy += ly[i]; }
    cx /= static_cast<double>(lx.size());
    cy /= static_cast<double>(ly.size());
  }
  // Line through (cx, cy) with slope s in log10 units, clipped to the x range.
  auto line = [&](double s, double a, const std::string& cls, const std::string& extra) {
    return "<line class=\"" + cls + "\" x1=\"" + fmt(X(x0)) + "\" y1=\"" + fmt(Y(a + s * x0)) +
           "\" x2=\"" + fmt(X(x1)) + "\" y2=\"" + fmt(Y(a + s * x1)) + "\" " + extra + "/>\n";
  };

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.width) +
                  "\" height=\"" + std::to_string(opt.height) + "\" viewBox=\"0 0 " +
                  std::to_string(opt.width) + " " + std::to_string(opt.height) + "\">\n";
  s += "<defs><clipPath id=\"plot\"><rect x=\"" + fmt(m) + "\" y=\"" + fmt(m) + "\" width=\"" +
       fmt(W - 2 * m) + "\" height=\"" + fmt(H - 2 * m) + "\"/></clipPath></defs>\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<rect x=\"" + fmt(m) + "\" y=\"" + fmt(m) + "\" width=\"" + fmt(W - 2 * m) + "\" height=\"" +
       fmt(H - 2 * m) + "\" fill=\"none\" stroke=\"black\"/>\n";
  if (!opt.title.empty())
    s += "<text x=\"" + fmt(W / 2) + "\" y=\"30\" text-anchor=\"middle\" font-size=\"16\">" +
         escape(opt.title) + "</text>\n";
  s += "<text x=\"" + fmt(W / 2) + "\" y=\"" + fmt(H - 15) +
       "\" text-anchor=\"middle\" font-size=\"13\">log10 v</text>\n";
  s += "<text x=\"18\" y=\"" + fmt(H / 2) + "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " +
       fmt(H / 2) + ")\">log10 R(v)</text>\n";
  for (int t = static_cast<int>(std::ceil(x0)); t <= static_cast<int>(std::floor(x1)); ++t)
    s += "<text x=\"" + fmt(X(t)) + "\" y=\"" + fmt(H - m + 16) +
         "\" text-anchor=\"middle\" font-size=\"11\">" + std::to_string(t) + "</text>\n";

  s += "<g clip-path=\"url(#plot)\">\n";
  const double lo = static_cast<double>(dstar) / (2.0 * dim);
  const double hi = static_cast<double>(dstar) / dim;
  s += line(lo, cy - lo * cx, "ref-lower", "stroke=\"#1f77b4\" stroke-dasharray=\"6,4\"");
  s += line(hi, cy - hi * cx, "ref-upper", "stroke=\"#d62728\" stroke-dasharray=\"6,4\"");
  if (opt.envelope_exponent)
    s += line(*opt.envelope_exponent, cy - *opt.envelope_exponent * cx, "ref-envelope",
              "stroke=\"#2ca02c\" stroke-dasharray=\"2,3\"");
  if (fit.points > 0 && std::isfinite(fit.slope))
    s += line(fit.slope, fit.intercept / std::log(10.0), "fit", "stroke=\"black\" stroke-width=\"1.5\"");
  for (std::size_t i = 0; i < lx.size(); ++i)
    s += "<circle class=\"point\" cx=\"" + fmt(X(lx[i])) + "\" cy=\"" + fmt(Y(ly[i])) + "\" r=\"4\"/>\n";
  s += "</g>\n";

  char legend[256];
  std::snprintf(legend, sizeof legend, "slope %.3f (r2 %.3f); reference %.3f and %.3f", fit.slope,
                fit.r2, lo, hi);
  s += "<text x=\"" + fmt(m + 8) + "\" y=\"" + fmt(m + 18) + "\" font-size=\"12\">" + legend + "</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace isores
