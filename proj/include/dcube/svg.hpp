#pragma once

// SVG factor maps: labeled scatter plots of scores on a pair of axes, drawn
// over a square background grid whose step d is printed in a corner.

#include "dcube/tabular.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dcube::svg {

struct Layer {
  Matrix scores;                          ///< n x (>= 2) coordinates
  Labels labels;                          ///< one per row
  bool filled = true;                     ///< filled vs. open markers
  bool arrows = false;                    ///< arrows from the origin (variable maps)
  std::optional<GroupAssignment> stars;   ///< join each point to its group barycenter
};

struct Panel {
  std::string title;
  std::vector<Layer> layers;
};

struct MapOptions {
  Index axis_x = 0;
  Index axis_y = 1;
  double panel_size = 360.0;
  Index columns = 2;   ///< panels per row in multi-panel documents
};

/// Grid step: a 1, 2 or 5 times a power of ten giving about six cells over `span`.
double grid_step(double span);

std::string emit_factor_map(const Matrix& scores, const Labels& labels, const MapOptions& options = {});
std::string emit_factor_map(const Panel& panel, const MapOptions& options = {});
/// Several panels sharing one scale, laid out on a grid.
std::string emit_panels(const std::vector<Panel>& panels, const MapOptions& options = {});

}  // namespace dcube::svg
