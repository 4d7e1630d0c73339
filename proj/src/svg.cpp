#include "dcube/svg.hpp"

#include "dcube/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dcube::svg {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string step_label(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", d);
  return buf;
}

struct Frame {
  double lo = -1.0;
  double hi = 1.0;
  double step = 1.0;
};

void check_layer(const Layer& l, const MapOptions& o) {
  if (l.scores.rows() == 0) throw Error(ErrorKind::EmptyScores, "no points to plot");
  if (l.scores.cols() <= std::max(o.axis_x, o.axis_y)) {
    throw Error(ErrorKind::EmptyScores, "scores have " + std::to_string(l.scores.cols()) + " axes");
  }
  if (static_cast<Index>(l.labels.size()) != l.scores.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "one label per plotted point is required");
  }
  if (l.stars && l.stars->rows() != l.scores.rows()) {
    throw Error(ErrorKind::RowMismatch, "star grouping does not cover the points");
  }
}

// Square window containing the origin and every point, snapped to the grid.
Frame frame_for(const std::vector<Panel>& panels, const MapOptions& o) {
  double lo = 0.0;
  double hi = 0.0;
  for (const auto& p : panels) {
    for (const auto& l : p.layers) {
      check_layer(l, o);
      for (Index axis : {o.axis_x, o.axis_y}) {
        lo = std::min(lo, l.scores.col(axis).minCoeff());
        hi = std::max(hi, l.scores.col(axis).maxCoeff());
      }
    }
  }
  Frame f;
  f.step = grid_step(hi - lo);
  f.lo = std::floor(lo / f.step - 0.5) * f.step;
  f.hi = std::ceil(hi / f.step + 0.5) * f.step;
  return f;
}

Matrix group_centers(const Matrix& pts, const GroupAssignment& g) {
  Matrix c = Matrix::Zero(g.groups(), 2);
  const auto n = g.counts();
  for (Index i = 0; i < pts.rows(); ++i) c.row(g.group_of(i)) += pts.row(i);
  for (Index k = 0; k < g.groups(); ++k) c.row(k) /= static_cast<double>(n[static_cast<std::size_t>(k)]);
  return c;
}

void draw_panel(std::ostringstream& out, const Panel& panel, const Frame& f, const MapOptions& o, double x0,
                double y0) {
  const double size = o.panel_size;
  const double scale = size / (f.hi - f.lo);
  auto px = [&](double v) { return x0 + (v - f.lo) * scale; };
  auto py = [&](double v) { return y0 + size - (v - f.lo) * scale; };

  out << "<g class=\"panel\">\n";
  out << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(size) << "\" height=\"" << num(size)
      << "\" fill=\"white\" stroke=\"black\"/>\n";
  const auto cells = static_cast<long>(std::lround((f.hi - f.lo) / f.step));
  for (long c = 1; c < cells; ++c) {
    const double v = f.lo + static_cast<double>(c) * f.step;
    out << "<line class=\"grid\" x1=\"" << num(px(v)) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(px(v))
        << "\" y2=\"" << num(y0 + size) << "\" stroke=\"#dddddd\"/>\n";
    out << "<line class=\"grid\" x1=\"" << num(x0) << "\" y1=\"" << num(py(v)) << "\" x2=\"" << num(x0 + size)
        << "\" y2=\"" << num(py(v)) << "\" stroke=\"#dddddd\"/>\n";
  }
  out << "<line class=\"axis\" x1=\"" << num(px(0)) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(px(0))
      << "\" y2=\"" << num(y0 + size) << "\" stroke=\"#888888\"/>\n";
  out << "<line class=\"axis\" x1=\"" << num(x0) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(x0 + size)
      << "\" y2=\"" << num(py(0)) << "\" stroke=\"#888888\"/>\n";
  out << "<text class=\"scale\" x=\"" << num(x0 + size - 4) << "\" y=\"" << num(y0 + 14)
      << "\" text-anchor=\"end\" font-size=\"11\">d = " << step_label(f.step) << "</text>\n";
  if (!panel.title.empty()) {
    out << "<text class=\"title\" x=\"" << num(x0 + 4) << "\" y=\"" << num(y0 + 14) << "\" font-size=\"12\">"
        << escape(panel.title) << "</text>\n";
  }

  for (const auto& l : panel.layers) {
    Matrix pts(l.scores.rows(), 2);
    pts.col(0) = l.scores.col(o.axis_x);
    pts.col(1) = l.scores.col(o.axis_y);
    const char* fill = l.filled ? "black" : "white";

    if (l.stars) {
      const Matrix centers = group_centers(pts, *l.stars);
      for (Index i = 0; i < pts.rows(); ++i) {
        const auto c = centers.row(l.stars->group_of(i));
        out << "<line class=\"star\" x1=\"" << num(px(c[0])) << "\" y1=\"" << num(py(c[1])) << "\" x2=\""
            << num(px(pts(i, 0))) << "\" y2=\"" << num(py(pts(i, 1))) << "\" stroke=\"#555555\"/>\n";
      }
      for (Index i = 0; i < pts.rows(); ++i) {
        out << "<circle class=\"point\" cx=\"" << num(px(pts(i, 0))) << "\" cy=\"" << num(py(pts(i, 1)))
            << "\" r=\"3\" fill=\"" << fill << "\" stroke=\"black\"><title>" << escape(l.labels[static_cast<std::size_t>(i)])
            << "</title></circle>\n";
      }
      for (Index k = 0; k < centers.rows(); ++k) {
        out << "<text class=\"barycenter\" x=\"" << num(px(centers(k, 0))) << "\" y=\"" << num(py(centers(k, 1)))
            << "\" text-anchor=\"middle\" font-size=\"11\" style=\"paint-order:stroke\" stroke=\""
            << (l.filled ? "#bbbbbb" : "white") << "\" stroke-width=\"4\">"
            << escape(l.stars->labels()[static_cast<std::size_t>(k)]) << "</text>\n";
      }
      continue;
    }

    for (Index i = 0; i < pts.rows(); ++i) {
      const double x = px(pts(i, 0));
      const double y = py(pts(i, 1));
      if (l.arrows) {
        out << "<line class=\"arrow\" x1=\"" << num(px(0)) << "\" y1=\"" << num(py(0)) << "\" x2=\"" << num(x)
            << "\" y2=\"" << num(y) << "\" stroke=\"black\" marker-end=\"url(#head)\"/>\n";
      } else {
        out << "<circle class=\"point\" cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"3\" fill=\"" << fill
            << "\" stroke=\"black\"/>\n";
      }
      out << "<text class=\"label\" x=\"" << num(x + 4) << "\" y=\"" << num(y - 4) << "\" font-size=\"10\">"
          << escape(l.labels[static_cast<std::size_t>(i)]) << "</text>\n";
    }
  }
  out << "</g>\n";
}

}  // namespace

double grid_step(double span) {
  if (!(span > 0.0) || !std::isfinite(span)) return 1.0;
  const double raw = span / 6.0;
  const double base = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * base >= raw * (1.0 - 1e-12)) return m * base;
  }
  return 10.0 * base;
}

std::string emit_panels(const std::vector<Panel>& panels, const MapOptions& options) {
  if (panels.empty()) throw Error(ErrorKind::EmptyScores, "no panels to plot");
  const Frame f = frame_for(panels, options);
  const Index cols = std::max<Index>(1, std::min<Index>(options.columns, static_cast<Index>(panels.size())));
  const Index rows = (static_cast<Index>(panels.size()) + cols - 1) / cols;
  const double gap = 10.0;
  const double width = static_cast<double>(cols) * (options.panel_size + gap) + gap;
  const double height = static_cast<double>(rows) * (options.panel_size + gap) + gap;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\" font-family=\"sans-serif\">\n";
  out << "<defs><marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" orient=\"auto\">"
         "<path d=\"M0,0 L6,3 L0,6 z\"/></marker></defs>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    const auto r = static_cast<double>(static_cast<Index>(i) / cols);
    const auto c = static_cast<double>(static_cast<Index>(i) % cols);
    draw_panel(out, panels[i], f, options, gap + c * (options.panel_size + gap), gap + r * (options.panel_size + gap));
  }
  out << "</svg>\n";
  return out.str();
}

std::string emit_factor_map(const Panel& panel, const MapOptions& options) {
  MapOptions one = options;
  one.columns = 1;
  return emit_panels({panel}, one);
}

std::string emit_factor_map(const Matrix& scores, const Labels& labels, const MapOptions& options) {
  Layer layer;
  layer.scores = scores;
  layer.labels = labels;
  return emit_factor_map(Panel{"", {std::move(layer)}}, options);
}

}  // namespace dcube::svg
