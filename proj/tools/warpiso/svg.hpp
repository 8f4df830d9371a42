#pragma once

// Minimal self-contained SVG line charts with deterministic output.

#include <filesystem>
#include <string>
#include <vector>

namespace warpiso::cli {

class SvgPlot {
 public:
  SvgPlot(std::string title, std::string x_label, std::string y_label)
      : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

  void line(std::vector<double> x, std::vector<double> y, std::string color, std::string label);
  /// Piecewise-constant steps: y[i] holds on [i, i + 1).
  void steps(std::vector<double> y, std::string color, std::string label);
  void points(std::vector<double> x, std::vector<double> y, std::string color, std::string label);
  /// Shaded vertical band [x0, x1].
  void band(double x0, double x1, std::string color);
  void hline(double y, std::string color);
  void vline(double x, std::string color);

  bool empty() const noexcept { return series_.empty(); }
  std::string render() const;
  void write(const std::filesystem::path& path) const;

 private:
  enum class Kind { Line, Steps, Points };
  struct Series {
    Kind kind;
    std::vector<double> x;
    std::vector<double> y;
    std::string color;
    std::string label;
  };
  struct Band {
    double x0, x1;
    std::string color;
  };
  struct Rule {
    bool horizontal;
    double at;
    std::string color;
  };
  std::string title_, x_label_, y_label_;
  std::vector<Series> series_;
  std::vector<Band> bands_;
  std::vector<Rule> rules_;
};

}  // namespace warpiso::cli
