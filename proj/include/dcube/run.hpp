#pragma once

// Analysis dispatch for the command line: configuration, preprocessing,
// report assembly and factor-map rendering.

#include "dcube/pta.hpp"
#include "dcube/report.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dcube {

enum class Method { Pca, Bga, Coia, Pta, Bgcoia, Statico, Costatis };

/// Preprocessing of a stacked table. The `within` variants center each block
/// separately (blocks file required); `partial` standardizes each block.
enum class Scaling { None, Center, Standardize, Partial, Within, StandardizeWithin, Log1pCenter, Log1pWithin };

Method parse_method(const std::string& s);
Scaling parse_scaling(const std::string& s);
std::string to_string(Method m);
std::string to_string(Scaling s);
const std::vector<std::string>& method_names();
const std::vector<std::string>& scaling_names();

struct RunConfig {
  Method method = Method::Pca;
  std::filesystem::path table_x;
  std::optional<std::filesystem::path> table_y;
  std::optional<std::filesystem::path> groups;
  std::optional<std::filesystem::path> blocks_x;
  std::optional<std::filesystem::path> blocks_y;
  Scaling scale_x = Scaling::Center;
  Scaling scale_y = Scaling::Center;
  Index axes = 2;
  int nperm = 999;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out = "out";
  bool plots = false;
  InterstructureMode interstructure = InterstructureMode::Cov;
  unsigned threads = 0;

  /// Stable text form of every result-affecting setting (no paths, no threads).
  std::string canonical() const;
};

/// Throws InvalidConfig when required inputs for the method are missing.
void validate(const RunConfig& config);

Triplet preprocess(const Triplet& t, Scaling scaling, const std::optional<BlockDescriptor>& blocks);

struct Outcome {
  Report report;
  std::vector<std::pair<std::string, std::string>> plots;  ///< file name, SVG document
};

/// Loads inputs and runs the configured analysis without touching the disk.
Outcome analyze(const RunConfig& config);

/// analyze() followed by writing report.txt, CSV sidecars and SVG maps.
Report run(const RunConfig& config);

}  // namespace dcube
