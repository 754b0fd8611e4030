#include "rootsim/plot.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "rootsim/errors.hpp"
#include "rootsim/io.hpp"

namespace rootsim {

namespace {

constexpr double kWidth = 640, kHeight = 480, kMargin = 60;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

struct Axis {
  double lo, hi;
  bool log;
  double map(double v, double a, double b) const {
    const double t = log ? (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo))
                         : (v - lo) / (hi - lo);
    return a + t * (b - a);
  }
};

Axis make_axis(double lo, double hi, bool log) {
  if (log) {
    lo = std::pow(10.0, std::floor(std::log10(lo)));
    hi = std::pow(10.0, std::ceil(std::log10(hi)));
    if (hi <= lo) hi = lo * 10.0;
  } else if (hi <= lo) {
    hi = lo + 1.0;
  }
  return {lo, hi, log};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

std::string tail_plot_svg(const ExperimentResult& result) {
  std::map<std::size_t, std::vector<const TailEstimate*>> by_n;
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  bool xlog = true;
  for (const auto& r : result.rows) {
    by_n[r.n].push_back(&r);
    if (r.param <= 0.0) xlog = false;
    xmin = std::min(xmin, r.param);
    xmax = std::max(xmax, r.param);
    if (r.ci_hi > 0.0) ymax = std::max(ymax, r.ci_hi);
    if (r.p_hat > 0.0) ymin = std::min(ymin, r.p_hat);
    if (r.ci_lo > 0.0) ymin = std::min(ymin, r.ci_lo);
  }
  if (!std::isfinite(ymin)) ymin = 1e-4;
  if (!std::isfinite(ymax)) ymax = 1.0;
  if (!std::isfinite(xmin)) xmin = 0.0, xmax = 1.0;
  const Axis xa = make_axis(xmin, xmax, xlog);
  const Axis ya = make_axis(std::max(ymin, 1e-9), std::max(ymax, ymin * 10), true);
  auto px = [&](double v) { return xa.map(v, kMargin, kWidth - kMargin); };
  auto py = [&](double v) { return ya.map(std::max(v, ya.lo), kHeight - kMargin, kMargin); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\">"
     << to_string(result.config.experiment) << " (" << result.config.dist << ", "
     << result.config.phi << ")</text>\n"
     << "<g class=\"axes\" stroke=\"black\">\n"
     << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin
     << "\" y2=\"" << kHeight - kMargin << "\"/>\n"
     << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
     << kHeight - kMargin << "\"/>\n</g>\n"
     << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 20 << "\" font-size=\"11\">"
     << fmt(xa.lo) << "</text>\n"
     << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 20
     << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(xa.hi) << "</text>\n"
     << "<text x=\"" << kMargin - 4 << "\" y=\"" << kHeight - kMargin
     << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(ya.lo) << "</text>\n"
     << "<text x=\"" << kMargin - 4 << "\" y=\"" << kMargin + 4
     << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(ya.hi) << "</text>\n";

  std::size_t si = 0;
  for (const auto& [n, rows] : by_n) {
    const char* color = kPalette[si++ % std::size(kPalette)];
    os << "<g class=\"series\" data-n=\"" << n << "\" stroke=\"" << color << "\" fill=\"" << color
       << "\">\n<polyline fill=\"none\" points=\"";
    for (const auto* r : rows)
      if (r->p_hat > 0.0) os << px(r->param) << ',' << py(r->p_hat) << ' ';
    os << "\"/>\n";
    for (const auto* r : rows) {
      const double x = px(r->param);
      os << "<line x1=\"" << x << "\" y1=\"" << py(r->ci_lo) << "\" x2=\"" << x << "\" y2=\""
         << py(r->ci_hi) << "\"/>\n";
      if (r->p_hat > 0.0) os << "<circle cx=\"" << x << "\" cy=\"" << py(r->p_hat) << "\" r=\"3\"/>\n";
    }
    os << "</g>\n";

    std::vector<std::pair<double, double>> pts;
    for (const auto* r : rows) pts.emplace_back(r->param, r->p_hat);
    try {
      const auto fit = scaling_fit(pts);
      if (xlog) {
        const double x0 = xa.lo, x1 = xa.hi;
        const double y0 = std::exp(fit.intercept) * std::pow(x0, fit.slope);
        const double y1 = std::exp(fit.intercept) * std::pow(x1, fit.slope);
        os << "<path class=\"fit\" stroke=\"" << color
           << "\" stroke-dasharray=\"4 3\" fill=\"none\" d=\"M" << px(x0) << ',' << py(y0) << " L"
           << px(x1) << ',' << py(y1) << "\"/>\n";
      }
    } catch (const InsufficientDataError&) {
    }
    os << "<text x=\"" << kWidth - kMargin - 4 << "\" y=\"" << kMargin + 16 * si
       << "\" font-size=\"11\" text-anchor=\"end\" fill=\"" << color << "\">n=" << n << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string roots_plot_svg(const RootSet& rs, std::span<const double> widths) {
  double extent = 1.2;
  for (const auto& r : rs.roots) extent = std::max(extent, 1.05 * std::abs(r));
  extent = std::min(extent, 4.0);
  const double size = 560, half = size / 2;
  const double scale = (half - 20) / extent;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<g class=\"bands\" fill=\"none\" stroke=\"#cccccc\">\n";
  for (double w : widths) {
    for (double r : {1.0 - w, 1.0 + w})
      if (r > 0.0 && r < extent)
        os << "<circle cx=\"" << half << "\" cy=\"" << half << "\" r=\"" << r * scale << "\"/>\n";
  }
  os << "</g>\n<circle class=\"unit\" cx=\"" << half << "\" cy=\"" << half << "\" r=\"" << scale
     << "\" fill=\"none\" stroke=\"black\"/>\n"
     << "<g class=\"series\" fill=\"#d62728\">\n";
  for (const auto& r : rs.roots) {
    if (std::abs(r) > extent) continue;
    os << "<circle cx=\"" << half + r.real() * scale << "\" cy=\"" << half - r.imag() * scale
       << "\" r=\"2\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace rootsim
