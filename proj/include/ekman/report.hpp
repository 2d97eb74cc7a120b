#pragma once
#include <string>
#include <vector>

#include "ekman/verify.hpp"

namespace ekman {

struct Series {
  std::string label;
  std::vector<double> x, y;
};

struct PlotSpec {
  std::string title;
  std::string caption;  // what the curves measure
  std::string xlabel, ylabel;
  bool logx = false, logy = true;
  std::vector<std::string> notes;  // extra annotation lines
};

// Self-contained SVG line plot; output depends only on the inputs.
std::string svg_plot(const PlotSpec& spec, const std::vector<Series>& series);

// log-log plot of a study with its fitted slope line
std::string svg_study(const StudyTable& t, const std::string& caption);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace ekman
