#include "ekman/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ekman {

namespace {

const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v, int prec = 4)
{
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

std::string esc(const std::string& s)
{
  std::string o;
  for (char c : s) {
    switch (c) {
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '&': o += "&amp;"; break;
      default: o += c;
    }
  }
  return o;
}

struct PlotAxis {
  double lo, hi;
  bool log;
  double map(double v, double a, double b) const
  {
    double f = log ? (std::log10(v) - lo) / (hi - lo) : (v - lo) / (hi - lo);
    return a + f * (b - a);
  }
};

PlotAxis make_axis(const std::vector<Series>& s, bool use_x, bool log)
{
  double lo = 1e300, hi = -1e300;
  for (const auto& c : s)
    for (double v : use_x ? c.x : c.y) {
      if (!std::isfinite(v) || (log && v <= 0.0)) continue;
      double w = log ? std::log10(v) : v;
      lo = std::min(lo, w);
      hi = std::max(hi, w);
    }
  if (lo > hi) lo = 0.0, hi = 1.0;
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  if (log) {
    lo = std::floor(lo * 4.0) / 4.0;
    hi = std::ceil(hi * 4.0) / 4.0;
  } else {
    double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  return {lo, hi, log};
}

}  // namespace

std::string svg_plot(const PlotSpec& spec, const std::vector<Series>& series)
{
  const double W = 640, H = 440, L = 80, R = 200, T = 40, B = 90;
  const double x0 = L, x1 = W - R, y0 = H - B, y1 = T;
  PlotAxis ax = make_axis(series, true, spec.logx), ay = make_axis(series, false, spec.logy);
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << " " << H << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << esc(spec.title)
    << "</text>\n";
  o << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\"" << y0 - y1
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  auto ticks = [&](const PlotAxis& a, bool is_x) {
    int n = 5;
    for (int i = 0; i <= n; ++i) {
      double f = a.lo + (a.hi - a.lo) * i / n;
      double v = a.log ? std::pow(10.0, f) : f;
      double p = is_x ? x0 + (x1 - x0) * i / n : y0 - (y0 - y1) * i / n;
      if (is_x) {
        o << "<line x1=\"" << p << "\" y1=\"" << y0 << "\" x2=\"" << p << "\" y2=\"" << y0 + 4
          << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << p << "\" y=\"" << y0 + 16 << "\" text-anchor=\"middle\">" << num(v, 3) << "</text>\n";
      } else {
        o << "<line x1=\"" << x0 - 4 << "\" y1=\"" << p << "\" x2=\"" << x0 << "\" y2=\"" << p
          << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << x0 - 6 << "\" y=\"" << p + 4 << "\" text-anchor=\"end\">" << num(v, 3) << "</text>\n";
      }
    }
  };
  ticks(ax, true);
  ticks(ay, false);
  o << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << y0 + 34 << "\" text-anchor=\"middle\">"
    << esc(spec.xlabel) << (spec.logx ? " (log)" : "") << "</text>\n";
  o << "<text x=\"18\" y=\"" << (y0 + y1) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << (y0 + y1) / 2 << ")\">" << esc(spec.ylabel) << (spec.logy ? " (log)" : "") << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* col = palette[k % 6];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if ((spec.logx && s.x[i] <= 0) || (spec.logy && s.y[i] <= 0)) continue;
      double px = ax.map(s.x[i], x0, x1), py = ay.map(s.y[i], y0, y1);
      pts += num(px, 6) + "," + num(py, 6) + " ";
      o << "<circle cx=\"" << num(px, 6) << "\" cy=\"" << num(py, 6) << "\" r=\"2.5\" fill=\"" << col << "\"/>\n";
    }
    o << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\"/>\n";
    double ly = y1 + 14 + 16 * k;
    o << "<line x1=\"" << x1 + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << x1 + 28 << "\" y2=\"" << ly - 4
      << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << x1 + 32 << "\" y=\"" << ly << "\">" << esc(s.label) << "</text>\n";
  }
  double ny = y1 + 20 + 16 * series.size();
  for (const auto& n : spec.notes) {
    o << "<text x=\"" << x1 + 10 << "\" y=\"" << ny << "\">" << esc(n) << "</text>\n";
    ny += 15;
  }
  o << "<text x=\"" << L << "\" y=\"" << H - 18 << "\" font-style=\"italic\">" << esc(spec.caption) << "</text>\n";
  o << "</svg>\n";
  return o.str();
}

std::string svg_study(const StudyTable& t, const std::string& caption)
{
  Series data{"measured", {}, {}}, fit{"fit", {}, {}};
  for (const auto& r : t.rows) {
    data.x.push_back(r.eps);
    data.y.push_back(r.value);
    fit.x.push_back(r.eps);
    fit.y.push_back(std::exp(t.fit.intercept) * std::pow(r.eps, t.fit.slope));
  }
  PlotSpec p;
  p.title = t.name + (t.variant.empty() ? "" : " (" + t.variant + ")");
  p.caption = caption;
  p.xlabel = "epsilon";
  p.ylabel = "value";
  p.logx = true;
  p.logy = true;
  p.notes = {"slope " + num(t.fit.slope) + " +/- " + num(t.fit.stderr_, 2)};
  return svg_plot(p, {data, fit});
}

std::string read_text_file(const std::string& path)
{
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text)
{
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

}  // namespace ekman
