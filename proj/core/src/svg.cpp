#include "swave/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace swave {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct Axis {
  double lo = 0.0, hi = 1.0;
  bool log = false;
  double map(double v, double pix_lo, double pix_hi) const {
    const double t = log ? (std::log10(v) - lo) / (hi - lo) : (v - lo) / (hi - lo);
    return pix_lo + t * (pix_hi - pix_lo);
  }
};

Axis make_axis(const std::vector<double>& values, bool log) {
  Axis ax;
  ax.log = log;
  double lo = values.front(), hi = values.front();
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (log) {
    ax.lo = std::floor(std::log10(lo) - 1e-9);
    ax.hi = std::ceil(std::log10(hi) + 1e-9);
    if (ax.hi - ax.lo < 1.0) ax.hi = ax.lo + 1.0;
  } else {
    const double pad = (hi - lo) > 0 ? 0.05 * (hi - lo) : std::max(1.0, std::abs(hi));
    ax.lo = lo - pad;
    ax.hi = hi + pad;
  }
  return ax;
}

}  // namespace

std::string render_plot(const PlotSpec& spec) {
  if (spec.series.empty()) throw std::invalid_argument("render_plot: no series");
  std::vector<double> xs, ys;
  for (const auto& s : spec.series) {
    if (s.x.empty() || s.x.size() != s.y.size())
      throw std::invalid_argument("render_plot: series '" + s.name + "' empty or ragged");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (spec.loglog && (s.x[i] <= 0.0 || s.y[i] <= 0.0))
        throw std::invalid_argument("render_plot: nonpositive data on log axes in '" +
                                    s.name + "'");
      xs.push_back(s.x[i]);
      ys.push_back(s.y[i]);
    }
  }
  const Axis ax = make_axis(xs, spec.loglog);
  const Axis ay = make_axis(ys, spec.loglog);
  const double ml = 70, mr = 20, mt = 40, mb = 50;
  const double px0 = ml, px1 = spec.width - mr;
  const double py0 = spec.height - mb, py1 = mt;  // y grows upward

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
      << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << ' '
      << spec.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << spec.width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
      << spec.title << "</text>\n";

  // frame
  out << "<rect x=\"" << px0 << "\" y=\"" << py1 << "\" width=\"" << px1 - px0
      << "\" height=\"" << py0 - py1 << "\" fill=\"none\" stroke=\"#333\"/>\n";

  auto tick_positions = [](const Axis& a) {
    std::vector<double> t;
    if (a.log) {
      for (double d = a.lo; d <= a.hi + 1e-9; d += 1.0) t.push_back(std::pow(10.0, d));
    } else {
      const double span = a.hi - a.lo;
      const double step = std::pow(10.0, std::floor(std::log10(span / 4.0)));
      const double mult = span / step > 8 ? 2.0 : 1.0;
      for (double v = std::ceil(a.lo / (step * mult)) * step * mult; v <= a.hi + 1e-9 * span;
           v += step * mult)
        t.push_back(v);
    }
    return t;
  };

  for (double v : tick_positions(ax)) {
    const double px = ax.map(v, px0, px1);
    out << "<line x1=\"" << fmt(px) << "\" y1=\"" << py0 << "\" x2=\"" << fmt(px)
        << "\" y2=\"" << py1 << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << fmt(px) << "\" y=\"" << py0 + 18 << "\" text-anchor=\"middle\">"
        << fmt(v) << "</text>\n";
  }
  for (double v : tick_positions(ay)) {
    const double py = ay.map(v, py0, py1);
    out << "<line x1=\"" << px0 << "\" y1=\"" << fmt(py) << "\" x2=\"" << px1 << "\" y2=\""
        << fmt(py) << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << px0 - 6 << "\" y=\"" << fmt(py + 4)
        << "\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
  }
  out << "<text x=\"" << (px0 + px1) / 2 << "\" y=\"" << spec.height - 10
      << "\" text-anchor=\"middle\">" << spec.x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << (py0 + py1) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (py0 + py1) / 2 << ")\">" << spec.y_label << "</text>\n";

  // reference slope lines through the (geometric) midpoint of the first series
  const auto& s0 = spec.series.front();
  double x_mid = 0.0, y_mid = 0.0;
  for (std::size_t i = 0; i < s0.x.size(); ++i) {
    x_mid += spec.loglog ? std::log(s0.x[i]) : s0.x[i];
    y_mid += spec.loglog ? std::log(s0.y[i]) : s0.y[i];
  }
  x_mid /= s0.x.size();
  y_mid /= s0.y.size();
  if (spec.loglog) {
    x_mid = std::exp(x_mid);
    y_mid = std::exp(y_mid);
  }
  for (std::size_t r = 0; r < spec.references.size(); ++r) {
    const auto& ref = spec.references[r];
    const double x_beg = *std::min_element(s0.x.begin(), s0.x.end());
    const double x_end = *std::max_element(s0.x.begin(), s0.x.end());
    double y_beg, y_end;
    if (spec.loglog) {
      y_beg = y_mid * std::pow(x_beg / x_mid, ref.slope);
      y_end = y_mid * std::pow(x_end / x_mid, ref.slope);
    } else {
      y_beg = y_mid + ref.slope * (x_beg - x_mid);
      y_end = y_mid + ref.slope * (x_end - x_mid);
    }
    out << "<line x1=\"" << fmt(ax.map(x_beg, px0, px1)) << "\" y1=\""
        << fmt(ay.map(y_beg, py0, py1)) << "\" x2=\"" << fmt(ax.map(x_end, px0, px1))
        << "\" y2=\"" << fmt(ay.map(y_end, py0, py1))
        << "\" stroke=\"#999\" stroke-dasharray=\"2 3\"/>\n";
    out << "<text x=\"" << fmt(ax.map(x_beg, px0, px1) + 4) << "\" y=\""
        << fmt(ay.map(y_beg, py0, py1) - 4) << "\" fill=\"#666\">" << ref.label
        << "</text>\n";
  }

  for (std::size_t si = 0; si < spec.series.size(); ++si) {
    const auto& s = spec.series[si];
    const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
    const bool dashed = !s.name.empty() && s.name.back() == '*';
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
    if (dashed) out << " stroke-dasharray=\"6 4\"";
    out << " points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      out << fmt(ax.map(s.x[i], px0, px1)) << ',' << fmt(ay.map(s.y[i], py0, py1)) << ' ';
    out << "\"/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      out << "<circle cx=\"" << fmt(ax.map(s.x[i], px0, px1)) << "\" cy=\""
          << fmt(ay.map(s.y[i], py0, py1)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    out << "<text x=\"" << px1 - 6 << "\" y=\"" << py1 + 16 + 16 * static_cast<double>(si)
        << "\" text-anchor=\"end\" fill=\"" << color << "\">" << s.name << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_plot(const std::string& path, const PlotSpec& spec) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_plot: cannot write " + path);
  out << render_plot(spec);
}

}  // namespace swave
