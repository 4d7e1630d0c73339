#include "dcube/errors.hpp"
#include "dcube/run.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

template <class E>
CLI::Validator choice(const std::vector<std::string>& names, E (*parse)(const std::string&)) {
  return CLI::Validator(
      [names, parse](std::string& s) -> std::string {
        try {
          parse(s);
          return {};
        } catch (const dcube::Error&) {
          std::string all;
          for (const auto& n : names) all += (all.empty() ? "" : ", ") + n;
          return "expected one of: " + all;
        }
      },
      "", "");
}

dcube::Method parse_method(const std::string& s) { return dcube::parse_method(s); }
dcube::Scaling parse_scaling(const std::string& s) { return dcube::parse_scaling(s); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Duality-diagram analyses of paired ecological table sequences"};
  app.require_subcommand(1);

  app.set_config("--config", "", "INI/TOML preset; options go under an [analyze] section");
  auto* analyze = app.add_subcommand("analyze", "Run one analysis and write report.txt, CSV sidecars and SVG maps");
  analyze->fallthrough();

  std::string method;
  std::string table_x;
  std::string table_y;
  std::string groups;
  std::string blocks_x;
  std::string blocks_y;
  std::string scale_x = "center";
  std::string scale_y = "center";
  std::string inter = "cov";
  dcube::RunConfig config;
  std::uint64_t seed = 0;

  analyze->add_option("--method", method, "pca, bga, coia, pta, bgcoia, statico or costatis")
      ->required()
      ->check(choice(dcube::method_names(), parse_method));
  analyze->add_option("--table-x", table_x, "Labeled CSV table (X, environment)")->required();
  analyze->add_option("--table-y", table_y, "Labeled CSV table (Y, species) with the same rows");
  analyze->add_option("--groups", groups, "CSV of row label, group label");
  analyze->add_option("--blocks-x", blocks_x, "Block file: name and row count per line");
  analyze->add_option("--blocks-y", blocks_y, "Block file for Y (defaults to --blocks-x)");
  analyze->add_option("--scale-x", scale_x, "Preprocessing of X")->check(choice(dcube::scaling_names(), parse_scaling));
  analyze->add_option("--scale-y", scale_y, "Preprocessing of Y")->check(choice(dcube::scaling_names(), parse_scaling));
  analyze->add_option("--axes", config.axes, "Number of axes kept")->capture_default_str();
  analyze->add_option("--nperm", config.nperm, "Permutations for the significance test")->capture_default_str();
  auto* seed_opt = analyze->add_option("--seed", seed, "Permutation seed (required when --nperm > 0)");
  analyze->add_option("--out", config.out, "Output directory")->capture_default_str();
  analyze->add_flag("--plots", config.plots, "Write SVG factor maps");
  analyze->add_option("--interstructure", inter, "Table similarity for PTA: cov or rv")
      ->check(CLI::IsMember({"cov", "rv"}));
  analyze->add_option("--threads", config.threads, "Worker threads for permutations (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    config.method = dcube::parse_method(method);
    config.table_x = table_x;
    if (!table_y.empty()) config.table_y = table_y;
    if (!groups.empty()) config.groups = groups;
    if (!blocks_x.empty()) config.blocks_x = blocks_x;
    if (!blocks_y.empty()) config.blocks_y = blocks_y;
    config.scale_x = dcube::parse_scaling(scale_x);
    config.scale_y = dcube::parse_scaling(scale_y);
    config.interstructure = inter == "rv" ? dcube::InterstructureMode::Rv : dcube::InterstructureMode::Cov;
    if (seed_opt->count() > 0) config.seed = seed;

    const dcube::Report report = dcube::run(config);
    for (const auto& e : report.entries()) {
      if (const auto* t = std::get_if<dcube::TextEntry>(&e); t && t->name.starts_with("warning.")) {
        std::cerr << "warning: " << t->value << '\n';
      }
    }
    std::cout << "wrote " << (config.out / "report.txt").string() << '\n';
    return 0;
  } catch (const dcube::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.category() == dcube::ErrorCategory::Numeric ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
