#pragma once

#include "tropmir/charts.hpp"
#include "tropmir/quiver.hpp"
#include "tropmir/ribbon.hpp"
#include "tropmir/tropical.hpp"

#include <string>

namespace tropmir::viz {

// DOT views of the combinatorial structure.
std::string tropical_dot(const tropical::TropicalGraph& g);
std::string ribbon_dot(const ribbon::RibbonGraph& x);
std::string quiver_dot(const quiver::Quiver& q);
std::string diagram_dot(const charts::ChartDiagram& d);

// SVG drawings are display-only: floating point is allowed here and nowhere
// else. Rays are clipped to a padded bounding box of the vertices.
std::string tropical_svg(const tropical::TropicalGraph& g);
std::string ribbon_svg(const ribbon::RibbonGraph& x);

}  // namespace tropmir::viz
