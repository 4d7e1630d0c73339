#include "dcube/run.hpp"

#include "dcube/coupling.hpp"
#include "dcube/errors.hpp"
#include "dcube/io.hpp"
#include "dcube/svg.hpp"

#include <fstream>
#include <sstream>

namespace dcube {

namespace {

const std::vector<std::pair<Method, std::string>>& method_table() {
  static const std::vector<std::pair<Method, std::string>> t = {
      {Method::Pca, "pca"},       {Method::Bga, "bga"},         {Method::Coia, "coia"},
      {Method::Pta, "pta"},       {Method::Bgcoia, "bgcoia"},   {Method::Statico, "statico"},
      {Method::Costatis, "costatis"}};
  return t;
}

const std::vector<std::pair<Scaling, std::string>>& scaling_table() {
  static const std::vector<std::pair<Scaling, std::string>> t = {
      {Scaling::None, "none"},
      {Scaling::Center, "center"},
      {Scaling::Standardize, "standardize"},
      {Scaling::Partial, "partial"},
      {Scaling::Within, "within"},
      {Scaling::StandardizeWithin, "standardize+within"},
      {Scaling::Log1pCenter, "log1p+center"},
      {Scaling::Log1pWithin, "log1p+within"}};
  return t;
}

Labels numbered(const std::string& prefix, Index n) {
  Labels out;
  for (Index i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

Labels axis_labels(Index m) { return numbered("Axis", m); }

bool needs_blocks(Scaling s) {
  return s == Scaling::Partial || s == Scaling::Within || s == Scaling::StandardizeWithin ||
         s == Scaling::Log1pWithin;
}

/// Per-table matrices stacked vertically, rows labeled "<table>.<row>".
std::pair<Matrix, Labels> stack(const std::vector<Matrix>& parts, const Labels& names,
                                const std::vector<Labels>& row_labels) {
  Index n = 0;
  const Index m = parts.empty() ? 0 : parts.front().cols();
  for (const auto& p : parts) n += p.rows();
  Matrix out(n, m);
  Labels labels;
  Index start = 0;
  for (std::size_t t = 0; t < parts.size(); ++t) {
    out.middleRows(start, parts[t].rows()) = parts[t];
    start += parts[t].rows();
    for (const auto& r : row_labels[t]) labels.push_back(names[t] + "." + r);
  }
  return {std::move(out), std::move(labels)};
}

std::vector<Labels> row_labels_of(const KTable& kt) {
  std::vector<Labels> out;
  for (const auto& t : kt.tables()) out.push_back(t.table().row_labels());
  return out;
}

std::vector<Labels> col_labels_of(const KTable& kt) {
  return std::vector<Labels>(static_cast<std::size_t>(kt.size()), kt.col_labels());
}

/// Grouping of stacked rows by their original per-table row label.
GroupAssignment by_row_label(const std::vector<Labels>& per_table) {
  Labels all;
  for (const auto& l : per_table) all.insert(all.end(), l.begin(), l.end());
  return GroupAssignment::from_row_groups(all);
}

struct Inputs {
  Triplet x;
  std::optional<Triplet> y;
  std::optional<GroupAssignment> groups;
  std::optional<BlockDescriptor> blocks_x;
  std::optional<BlockDescriptor> blocks_y;
};

class Builder {
 public:
  explicit Builder(const RunConfig& c) : config_(c) {}

  Report report;
  std::vector<std::pair<std::string, std::string>> plots;
  std::vector<std::string> warnings;

  void warn(const std::vector<std::string>& w) { warnings.insert(warnings.end(), w.begin(), w.end()); }

  void eigenvalues(const std::string& name, const Vector& v) {
    report.add_vector(name, numbered("", v.size()), v);
  }

  void matrix(const std::string& name, const Labels& rows, const Matrix& m) {
    report.add_matrix(name, rows, axis_labels(m.cols()), m);
  }

  void test(const std::string& prefix, const PermutationTestResult& t) {
    report.add_scalar(prefix + ".observed", t.observed);
    report.add_scalar(prefix + ".p_value", t.p_value);
    report.add_text(prefix + ".n_perm", std::to_string(t.n_perm));
    report.add_text(prefix + ".seed", std::to_string(t.seed));
  }

  bool plottable(Index axes) {
    if (!config_.plots) return false;
    if (axes < 2) {
      warnings.emplace_back("fewer than two axes kept; factor maps skipped");
      return false;
    }
    return true;
  }

  void plot(std::string file, std::string svg) { plots.emplace_back(std::move(file), std::move(svg)); }

 private:
  const RunConfig& config_;
};

svg::Layer layer(const Matrix& scores, const Labels& labels, bool filled = true, bool arrows = false) {
  svg::Layer l;
  l.scores = scores;
  l.labels = labels;
  l.filled = filled;
  l.arrows = arrows;
  return l;
}

svg::Layer star_layer(const Matrix& scores, const Labels& labels, const GroupAssignment& g, bool filled) {
  svg::Layer l = layer(scores, labels, filled);
  l.stars = g;
  return l;
}

std::vector<svg::Panel> panels(const std::vector<Matrix>& parts, const Labels& names, const std::vector<Labels>& labels,
                               bool arrows) {
  std::vector<svg::Panel> out;
  for (std::size_t t = 0; t < parts.size(); ++t) out.push_back({names[t], {layer(parts[t], labels[t], true, arrows)}});
  return out;
}

void add_pta(Builder& b, const std::string& prefix, const PTAResult& r, const KTable& kt) {
  const auto& names = r.names;
  b.report.add_matrix(prefix + "interstructure", names, names, r.inter.similarity);
  b.report.add_vector(prefix + "alpha", names, r.inter.alpha);
  b.eigenvalues(prefix + "interstructure_eigenvalues", r.inter.eigenvalues);
  if (r.inter.warning) b.warnings.push_back(*r.inter.warning);

  Matrix typ(static_cast<Index>(r.typology.size()), 3);
  for (std::size_t t = 0; t < r.typology.size(); ++t) {
    typ.row(static_cast<Index>(t)) << r.typology[t].weight, r.typology[t].cos2, r.typology[t].inertia;
  }
  b.report.add_matrix(prefix + "typology", names, {"weight", "cos2", "inertia"}, typ);

  const Decomposition& d = r.compromise.analysis;
  b.eigenvalues(prefix + "compromise_eigenvalues", d.spectrum);
  b.matrix(prefix + "compromise_rows", d.row_labels, d.row_scores);
  b.matrix(prefix + "compromise_cols", d.col_labels, d.col_coords);
  auto [rows, row_labels] = stack(r.rows, names, row_labels_of(kt));
  b.matrix(prefix + "intrastructure_rows", row_labels, rows);
  auto [cols, col_labels] = stack(r.cols, names, col_labels_of(kt));
  b.matrix(prefix + "intrastructure_cols", col_labels, cols);
}

void add_coia(Builder& b, const std::string& prefix, const CoInertiaResult& c, const Labels& x_cols,
              const Labels& y_cols, const Labels& rows) {
  b.eigenvalues(prefix + "eigenvalues", c.crossed.spectrum);
  b.report.add_scalar(prefix + "total_coinertia", c.total_coinertia);
  b.report.add_scalar(prefix + "rv", c.rv);
  Matrix ax(static_cast<Index>(c.axes.size()), 4);
  for (std::size_t a = 0; a < c.axes.size(); ++a) {
    ax.row(static_cast<Index>(a)) << c.axes[a].covariance, c.axes[a].correlation, c.axes[a].x_variance,
        c.axes[a].y_variance;
  }
  b.report.add_matrix(prefix + "axis_coupling", axis_labels(ax.rows()), {"covariance", "correlation", "x_variance", "y_variance"},
                      ax);
  b.matrix(prefix + "x_axes", x_cols, c.x_axes);
  b.matrix(prefix + "y_axes", y_cols, c.y_axes);
  b.matrix(prefix + "x_scores", rows, c.x_scores);
  b.matrix(prefix + "y_scores", rows, c.y_scores);
  b.warn(c.warnings);
}

Inputs load(const RunConfig& c) {
  const auto blocks_x = c.blocks_x ? std::optional(io::load_blocks(*c.blocks_x)) : std::nullopt;
  const auto blocks_y =
      c.blocks_y ? std::optional(io::load_blocks(*c.blocks_y)) : blocks_x;

  const DataTable raw_x = io::load_table(c.table_x);
  Triplet x = preprocess(Triplet::uniform(raw_x), c.scale_x, blocks_x);
  std::optional<Triplet> y;
  if (c.table_y) {
    const DataTable raw_y = io::load_table(*c.table_y);
    if (raw_y.row_labels() != raw_x.row_labels()) {
      throw Error(ErrorKind::RowMismatch, "row labels of --table-y differ from --table-x");
    }
    y = preprocess(Triplet::uniform(raw_y), c.scale_y, blocks_y);
  }
  std::optional<GroupAssignment> groups;
  if (c.groups) groups = io::load_groups(*c.groups, raw_x.row_labels());
  return Inputs{std::move(x), std::move(y), std::move(groups), blocks_x, blocks_y};
}

KTable split(const Triplet& t, const BlockDescriptor& b, const std::optional<GroupAssignment>& row_ids) {
  return row_ids ? split_blocks(t, b, *row_ids) : split_blocks(t, b);
}

void run_pca(Builder& b, const RunConfig& c, const Inputs& in) {
  const Decomposition d = gpca(in.x, c.axes);
  b.report.add_scalar("total_inertia", total_inertia(in.x));
  b.eigenvalues("eigenvalues", d.spectrum);
  b.matrix("axes", d.col_labels, d.axes);
  b.matrix("row_scores", d.row_labels, d.row_scores);
  b.matrix("col_coords", d.col_labels, d.col_coords);
  if (b.plottable(d.kept_axes())) {
    b.plot("rows.svg", svg::emit_factor_map(d.row_scores, d.row_labels));
    b.plot("columns.svg", svg::emit_factor_map(svg::Panel{"", {layer(d.col_coords, d.col_labels, true, true)}}));
  }
}

void run_bga(Builder& b, const RunConfig& c, const Inputs& in) {
  const BGAResult r = bga(in.x, *in.groups, c.axes);
  b.warn(r.warnings);
  b.report.add_scalar("between_inertia", r.between_inertia);
  b.report.add_scalar("total_inertia", r.total_inertia);
  b.report.add_scalar("ratio", r.ratio);
  b.eigenvalues("eigenvalues", r.analysis.spectrum);
  b.matrix("group_scores", r.analysis.row_labels, r.analysis.row_scores);
  b.matrix("row_scores", in.x.table().row_labels(), r.row_scores);
  b.matrix("col_coords", r.analysis.col_labels, r.analysis.col_coords);
  if (c.nperm > 0) b.test("test", bga_permutation_test(in.x, *in.groups, c.nperm, *c.seed, c.threads));
  if (b.plottable(r.analysis.kept_axes())) {
    b.plot("groups.svg", svg::emit_factor_map(svg::Panel{
                             "", {star_layer(r.row_scores, in.x.table().row_labels(), *in.groups, true)}}));
    b.plot("columns.svg", svg::emit_factor_map(
                              svg::Panel{"", {layer(r.analysis.col_coords, r.analysis.col_labels, true, true)}}));
  }
}

void run_coia(Builder& b, const RunConfig& c, const Inputs& in) {
  const CoInertiaResult r = coia(in.x, *in.y, c.axes);
  add_coia(b, "", r, in.x.table().col_labels(), in.y->table().col_labels(), in.x.table().row_labels());
  if (c.nperm > 0) b.test("test", coia_permutation_test(in.x, *in.y, c.nperm, *c.seed, c.threads));
  if (b.plottable(r.crossed.kept_axes())) {
    const auto& rows = in.x.table().row_labels();
    b.plot("rows.svg", svg::emit_factor_map(svg::Panel{"", {layer(r.x_scores, rows, false), layer(r.y_scores, rows, true)}}));
    b.plot("x_columns.svg",
           svg::emit_factor_map(svg::Panel{"", {layer(r.x_axes, in.x.table().col_labels(), true, true)}}));
    b.plot("y_columns.svg",
           svg::emit_factor_map(svg::Panel{"", {layer(r.y_axes, in.y->table().col_labels(), true, true)}}));
  }
}

void run_pta(Builder& b, const RunConfig& c, const Inputs& in) {
  const KTable kt = split(in.x, *in.blocks_x, in.groups);
  const PTAResult r = pta(kt, PTAOptions{c.interstructure, c.axes, false});
  add_pta(b, "", r, kt);
  if (b.plottable(r.compromise.analysis.kept_axes())) {
    const Decomposition& d = r.compromise.analysis;
    b.plot("compromise_rows.svg", svg::emit_factor_map(d.row_scores, d.row_labels));
    b.plot("compromise_cols.svg", svg::emit_factor_map(svg::Panel{"", {layer(d.col_coords, d.col_labels, true, true)}}));
    b.plot("intrastructure_rows.svg", svg::emit_panels(panels(r.rows, r.names, row_labels_of(kt), false)));
    b.plot("intrastructure_cols.svg", svg::emit_panels(panels(r.cols, r.names, col_labels_of(kt), true)));
  }
}

void run_bgcoia(Builder& b, const RunConfig& c, const Inputs& in) {
  const BGCOIAResult r = bgcoia(in.x, *in.y, *in.groups, c.axes);
  const Labels& groups = in.groups->labels();
  add_coia(b, "", r.coia, in.x.table().col_labels(), in.y->table().col_labels(), groups);
  const auto& rows = in.x.table().row_labels();
  b.matrix("env_rows", rows, r.env_rows);
  b.matrix("spe_rows", rows, r.spe_rows);
  b.matrix("env_barycenters", groups, r.env_barycenters);
  b.matrix("spe_barycenters", groups, r.spe_barycenters);
  const Decomposition& d = r.coia.crossed;
  b.matrix("species", d.row_labels, d.row_scores);
  b.matrix("variables", d.col_labels, d.col_coords);
  if (b.plottable(d.kept_axes())) {
    b.plot("species.svg", svg::emit_factor_map(d.row_scores, d.row_labels));
    b.plot("variables.svg", svg::emit_factor_map(svg::Panel{"", {layer(d.col_coords, d.col_labels, true, true)}}));
    b.plot("sites.svg", svg::emit_factor_map(svg::Panel{
                            "", {star_layer(r.env_rows, rows, *in.groups, false),
                                 star_layer(r.spe_rows, rows, *in.groups, true)}}));
  }
}

void run_statico(Builder& b, const RunConfig& c, const Inputs& in) {
  const KTable env = split_blocks(in.x, *in.blocks_x);
  const KTable spe = split_blocks(*in.y, *in.blocks_y);
  const STATICOResult r = statico(PairedKTables(env, spe), PTAOptions{c.interstructure, c.axes, false});
  add_pta(b, "", r.pta, r.cross_tables);
  const Labels& names = r.pta.names;
  auto [es, es_labels] = stack(r.env_sites_by_date, names, row_labels_of(env));
  b.matrix("env_sites", es_labels, es);
  auto [ss, ss_labels] = stack(r.spe_sites_by_date, names, row_labels_of(spe));
  b.matrix("spe_sites", ss_labels, ss);
  if (b.plottable(r.pta.compromise.analysis.kept_axes())) {
    const Decomposition& d = r.pta.compromise.analysis;
    b.plot("compromise_species.svg", svg::emit_factor_map(d.row_scores, d.row_labels));
    b.plot("compromise_variables.svg",
           svg::emit_factor_map(svg::Panel{"", {layer(d.col_coords, d.col_labels, true, true)}}));
    b.plot("variables_by_date.svg",
           svg::emit_panels(panels(r.env_vars_by_date, names, col_labels_of(r.cross_tables), true)));
    b.plot("species_by_date.svg",
           svg::emit_panels(panels(r.species_by_date, names, row_labels_of(r.cross_tables), true)));
    b.plot("env_sites_by_date.svg", svg::emit_panels(panels(r.env_sites_by_date, names, row_labels_of(env), false)));
    b.plot("spe_sites_by_date.svg", svg::emit_panels(panels(r.spe_sites_by_date, names, row_labels_of(spe), false)));
  }
}

void run_costatis(Builder& b, const RunConfig& c, const Inputs& in) {
  const KTable env = split(in.x, *in.blocks_x, in.groups);
  const KTable spe = split(*in.y, *in.blocks_y, in.groups);
  const PTAOptions opts{c.interstructure, c.axes, false};
  const COSTATISResult r = costatis(env, spe, opts, c.nperm, c.seed.value_or(0), c.threads);
  add_pta(b, "env.", r.env, env);
  add_pta(b, "spe.", r.spe, spe);
  const Labels& rows = env.table(0).table().row_labels();
  add_coia(b, "coia.", r.coia, env.col_labels(), spe.col_labels(), rows);
  if (r.test) b.test("test", *r.test);

  auto [er, er_labels] = stack(r.env_rows, r.env.names, row_labels_of(env));
  auto [sr, sr_labels] = stack(r.spe_rows, r.spe.names, row_labels_of(spe));
  b.matrix("env_rows", er_labels, er);
  b.matrix("spe_rows", sr_labels, sr);
  const GroupAssignment env_sites = by_row_label(row_labels_of(env));
  const GroupAssignment spe_sites = by_row_label(row_labels_of(spe));
  b.matrix("env_barycenters", env_sites.labels(), barycenters(er, env_sites));
  b.matrix("spe_barycenters", spe_sites.labels(), barycenters(sr, spe_sites));
  auto [ec, ec_labels] = stack(r.env_cols, r.env.names, col_labels_of(env));
  auto [sc, sc_labels] = stack(r.spe_cols, r.spe.names, col_labels_of(spe));
  b.matrix("env_cols", ec_labels, ec);
  b.matrix("spe_cols", sc_labels, sc);

  const Decomposition& d = r.coia.crossed;
  if (b.plottable(d.kept_axes())) {
    b.plot("env_biplot.svg", svg::emit_factor_map(svg::Panel{
                                 "", {star_layer(er, er_labels, env_sites, false),
                                      layer(d.col_coords, d.col_labels, true, true)}}));
    b.plot("spe_biplot.svg", svg::emit_factor_map(svg::Panel{
                                 "", {star_layer(sr, sr_labels, spe_sites, true),
                                      layer(d.row_scores, d.row_labels, true, true)}}));
  }
}

}  // namespace

Method parse_method(const std::string& s) {
  for (const auto& [m, name] : method_table()) {
    if (name == s) return m;
  }
  throw Error(ErrorKind::InvalidConfig, "unknown method '" + s + "'");
}

Scaling parse_scaling(const std::string& s) {
  for (const auto& [m, name] : scaling_table()) {
    if (name == s) return m;
  }
  throw Error(ErrorKind::InvalidConfig, "unknown scaling '" + s + "'");
}

std::string to_string(Method m) {
  for (const auto& [k, name] : method_table()) {
    if (k == m) return name;
  }
  return "?";
}

std::string to_string(Scaling s) {
  for (const auto& [k, name] : scaling_table()) {
    if (k == s) return name;
  }
  return "?";
}

const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : method_table()) v.push_back(e.second);
    return v;
  }();
  return names;
}

const std::vector<std::string>& scaling_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : scaling_table()) v.push_back(e.second);
    return v;
  }();
  return names;
}

std::string RunConfig::canonical() const {
  std::ostringstream out;
  out << "method=" << to_string(method) << "\nscale-x=" << to_string(scale_x) << "\nscale-y=" << to_string(scale_y)
      << "\naxes=" << axes << "\nnperm=" << nperm << "\nseed=" << (seed ? std::to_string(*seed) : "none")
      << "\ninterstructure=" << (interstructure == InterstructureMode::Cov ? "cov" : "rv") << '\n';
  return out.str();
}

void validate(const RunConfig& c) {
  auto require = [&](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::InvalidConfig, "method " + to_string(c.method) + " requires " + what);
  };
  require(!c.table_x.empty(), "--table-x");
  if (c.axes < 1) throw Error(ErrorKind::InvalidConfig, "--axes must be at least 1");
  if (c.nperm < 0) throw Error(ErrorKind::InvalidConfig, "--nperm must be nonnegative");

  const bool tested = c.method == Method::Bga || c.method == Method::Coia || c.method == Method::Costatis;
  if (tested && c.nperm > 0 && !c.seed) {
    throw Error(ErrorKind::InvalidConfig, "--seed is required when --nperm > 0");
  }
  switch (c.method) {
    case Method::Pca:
      break;
    case Method::Bga:
      require(c.groups.has_value(), "--groups");
      break;
    case Method::Coia:
      require(c.table_y.has_value(), "--table-y");
      break;
    case Method::Pta:
      require(c.blocks_x.has_value(), "--blocks-x");
      break;
    case Method::Bgcoia:
      require(c.table_y.has_value(), "--table-y");
      require(c.groups.has_value(), "--groups");
      break;
    case Method::Statico:
    case Method::Costatis:
      require(c.table_y.has_value(), "--table-y");
      require(c.blocks_x.has_value(), "--blocks-x");
      break;
  }
  if (needs_blocks(c.scale_x)) require(c.blocks_x.has_value(), "--blocks-x for --scale-x " + to_string(c.scale_x));
  if (c.table_y && needs_blocks(c.scale_y)) {
    require(c.blocks_x.has_value() || c.blocks_y.has_value(), "--blocks-y for --scale-y " + to_string(c.scale_y));
  }
}

Triplet preprocess(const Triplet& t, Scaling scaling, const std::optional<BlockDescriptor>& blocks) {
  auto per_block = [&](const Triplet& src, auto&& f) {
    if (!blocks) throw Error(ErrorKind::InvalidConfig, "scaling " + to_string(scaling) + " needs a blocks file");
    return stack_blocks(f(split_blocks(src, *blocks)), src.table().row_labels());
  };
  switch (scaling) {
    case Scaling::None:
      return t;
    case Scaling::Center:
      return center_table(t);
    case Scaling::Standardize:
      return standardize_table(t);
    case Scaling::Partial:
      return per_block(t, partial_standardize);
    case Scaling::Within:
      return per_block(t, block_center);
    case Scaling::StandardizeWithin:
      return per_block(standardize_table(t), block_center);
    case Scaling::Log1pCenter:
      return center_table(t.with_table(log1p_transform(t.table())));
    case Scaling::Log1pWithin:
      return per_block(t.with_table(log1p_transform(t.table())), block_center);
  }
  return t;
}

Outcome analyze(const RunConfig& config) {
  validate(config);
  const Inputs in = load(config);

  Builder b(config);
  b.report.add_text("method", to_string(config.method));
  b.report.add_text("provenance.config_sha256", sha256_hex(config.canonical()));
  b.report.add_text("provenance.table-x_sha256", file_sha256(config.table_x));
  if (config.table_y) b.report.add_text("provenance.table-y_sha256", file_sha256(*config.table_y));
  if (config.groups) b.report.add_text("provenance.groups_sha256", file_sha256(*config.groups));
  if (config.blocks_x) b.report.add_text("provenance.blocks-x_sha256", file_sha256(*config.blocks_x));
  if (config.blocks_y) b.report.add_text("provenance.blocks-y_sha256", file_sha256(*config.blocks_y));

  switch (config.method) {
    case Method::Pca: run_pca(b, config, in); break;
    case Method::Bga: run_bga(b, config, in); break;
    case Method::Coia: run_coia(b, config, in); break;
    case Method::Pta: run_pta(b, config, in); break;
    case Method::Bgcoia: run_bgcoia(b, config, in); break;
    case Method::Statico: run_statico(b, config, in); break;
    case Method::Costatis: run_costatis(b, config, in); break;
  }
  for (std::size_t i = 0; i < b.warnings.size(); ++i) {
    b.report.add_text("warning." + std::to_string(i + 1), b.warnings[i]);
  }
  return Outcome{std::move(b.report), std::move(b.plots)};
}

Report run(const RunConfig& config) {
  Outcome o = analyze(config);
  write_report(o.report, config.out);
  for (const auto& [file, doc] : o.plots) {
    std::ofstream out(config.out / file, std::ios::binary);
    out << doc;
    if (!out) throw Error(ErrorKind::InvalidConfig, "cannot write " + (config.out / file).string());
  }
  return std::move(o.report);
}

}  // namespace dcube
