#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace warpiso::cli {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

void SvgPlot::line(std::vector<double> x, std::vector<double> y, std::string color, std::string label) {
  series_.push_back({Kind::Line, std::move(x), std::move(y), std::move(color), std::move(label)});
}

void SvgPlot::steps(std::vector<double> y, std::string color, std::string label) {
  std::vector<double> x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) x[i] = static_cast<double>(i);
  series_.push_back({Kind::Steps, std::move(x), std::move(y), std::move(color), std::move(label)});
}

void SvgPlot::points(std::vector<double> x, std::vector<double> y, std::string color, std::string label) {
  series_.push_back({Kind::Points, std::move(x), std::move(y), std::move(color), std::move(label)});
}

void SvgPlot::band(double x0, double x1, std::string color) { bands_.push_back({x0, x1, std::move(color)}); }
void SvgPlot::hline(double y, std::string color) { rules_.push_back({true, y, std::move(color)}); }
void SvgPlot::vline(double x, std::string color) { rules_.push_back({false, x, std::move(color)}); }

std::string SvgPlot::render() const {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  auto grow = [](double v, double& lo, double& hi) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  for (const auto& s : series_) {
    for (double v : s.x) grow(v, xmin, xmax);
    if (s.kind == Kind::Steps && !s.x.empty()) grow(s.x.back() + 1.0, xmin, xmax);
    for (double v : s.y) grow(v, ymin, ymax);
  }
  for (const auto& r : rules_) grow(r.at, r.horizontal ? ymin : xmin, r.horizontal ? ymax : xmax);
  if (!(xmax >= xmin)) xmin = 0, xmax = 1;
  if (!(ymax >= ymin)) ymin = 0, ymax = 1;
  if (xmax == xmin) xmin -= 0.5, xmax += 0.5;
  if (ymax == ymin) ymin -= 0.5, ymax += 0.5;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto X = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto Y = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title_)
    << "</text>\n";
  for (const auto& b : bands_) {
    const double x0 = X(std::clamp(b.x0, xmin, xmax)), x1 = X(std::clamp(b.x1, xmin, xmax));
    o << "<rect x=\"" << num(x0) << "\" y=\"" << num(kTop) << "\" width=\"" << num(x1 - x0) << "\" height=\""
      << num(ph) << "\" fill=\"" << b.color << "\" fill-opacity=\"0.25\"/>\n";
  }
  o << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 4.0, yv = ymin + (ymax - ymin) * i / 4.0;
    o << "<text x=\"" << num(X(xv)) << "\" y=\"" << num(kTop + ph + 16) << "\" text-anchor=\"middle\">" << tick(xv)
      << "</text>\n";
    o << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(Y(yv) + 4) << "\" text-anchor=\"end\">" << tick(yv)
      << "</text>\n";
  }
  o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 10) << "\" text-anchor=\"middle\">"
    << escape(x_label_) << "</text>\n";
  o << "<text x=\"16\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << num(kTop + ph / 2) << ")\">" << escape(y_label_) << "</text>\n";
  for (const auto& r : rules_) {
    if (r.horizontal)
      o << "<line x1=\"" << num(kLeft) << "\" x2=\"" << num(kLeft + pw) << "\" y1=\"" << num(Y(r.at)) << "\" y2=\""
        << num(Y(r.at)) << "\" stroke=\"" << r.color << "\" stroke-dasharray=\"4 3\"/>\n";
    else
      o << "<line y1=\"" << num(kTop) << "\" y2=\"" << num(kTop + ph) << "\" x1=\"" << num(X(r.at)) << "\" x2=\""
        << num(X(r.at)) << "\" stroke=\"" << r.color << "\" stroke-dasharray=\"4 3\"/>\n";
  }
  int legend = 0;
  for (const auto& s : series_) {
    if (s.kind == Kind::Points) {
      for (std::size_t i = 0; i < s.x.size(); ++i)
        if (std::isfinite(s.y[i]))
          o << "<circle cx=\"" << num(X(s.x[i])) << "\" cy=\"" << num(Y(s.y[i])) << "\" r=\"3\" fill=\"" << s.color
            << "\"/>\n";
    } else {
      o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.y[i])) continue;
        o << num(X(s.x[i])) << "," << num(Y(s.y[i])) << " ";
        if (s.kind == Kind::Steps) o << num(X(s.x[i] + 1.0)) << "," << num(Y(s.y[i])) << " ";
      }
      o << "\"/>\n";
    }
    if (!s.label.empty()) {
      const double ly = kTop + 14 + 16 * legend++;
      o << "<rect x=\"" << num(kLeft + pw - 150) << "\" y=\"" << num(ly - 9) << "\" width=\"10\" height=\"10\" fill=\""
        << s.color << "\"/>\n";
      o << "<text x=\"" << num(kLeft + pw - 135) << "\" y=\"" << num(ly) << "\">" << escape(s.label) << "</text>\n";
    }
  }
  o << "</svg>\n";
  return o.str();
}

void SvgPlot::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  out << render();
}

}  // namespace warpiso::cli
