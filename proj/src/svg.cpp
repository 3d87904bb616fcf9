#include "lefbench/svg.hpp"

#include <cstdio>
#include <sstream>

namespace lefbench::svg {

namespace {

constexpr double kScale = 200.0;
constexpr double kCenter = 220.0;

std::string coord(const Point& p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f %.3f", kCenter + kScale * p.x.get_d(), kCenter - kScale * p.y.get_d());
  return buf;
}

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

std::string render(const planar::DiscModel& disc, const std::vector<NamedArc>& arcs) {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"440\" height=\"440\" viewBox=\"0 0 440 440\">\n";
  out << "<path d=\"M 20 220 A 200 200 0 1 0 420 220 A 200 200 0 1 0 20 220 Z\" fill=\"none\" stroke=\"#888\"/>\n";
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto& [name, arc] = arcs[i];
    out << "<path id=\"" << name << "\" d=\"M " << coord(arc.vertices.front());
    for (std::size_t k = 1; k < arc.vertices.size(); ++k) out << " L " << coord(arc.vertices[k]);
    out << "\" fill=\"none\" stroke=\"" << kPalette[i % 8] << "\" stroke-width=\"1.5\"/>\n";
  }
  for (const auto& p : disc.punctures()) {
    // a small square marker
    double x = kCenter + kScale * p.at.x.get_d();
    double y = kCenter - kScale * p.at.y.get_d();
    char buf[160];
    std::snprintf(buf, sizeof buf, "M %.3f %.3f h 6 v 6 h -6 Z", x - 3, y - 3);
    out << "<path id=\"puncture-" << p.id << "\" d=\"" << buf << "\" fill=\"#000\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace lefbench::svg
