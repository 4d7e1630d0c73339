#include "helpers.hpp"

#include "dcube/svg.hpp"

#include <string>

using namespace dcube;

namespace {

std::size_t count(const std::string& doc, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = doc.find(needle); pos != std::string::npos; pos = doc.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_SUITE("svg") {

TEST_CASE("two labeled points") {
  const std::string doc = svg::emit_factor_map(mat({{0, 0}, {1, 1}}), {"first", "second"});
  CHECK(doc.find(">first<") != std::string::npos);
  CHECK(doc.find(">second<") != std::string::npos);
  CHECK(count(doc, "class=\"point\"") == 2);
  CHECK(count(doc, "class=\"scale\"") == 1);
  CHECK(doc.find("d = 0.2") != std::string::npos);
  CHECK(count(doc, "class=\"grid\"") > 0);
  CHECK(doc.rfind("</svg>") != std::string::npos);
}

TEST_CASE("stars join points to their barycenter") {
  svg::Layer l;
  l.scores = mat({{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  l.labels = {"a", "b", "c", "d"};
  l.stars = GroupAssignment({0, 0, 0, 0}, {"site"});
  const std::string doc = svg::emit_factor_map(svg::Panel{"", {l}});
  CHECK(count(doc, "class=\"star\"") == 4);
  CHECK(count(doc, "class=\"barycenter\"") == 1);
  CHECK(doc.find(">site<") != std::string::npos);
}

TEST_CASE("48 site points with 12 barycenters") {
  Matrix env(24, 2), spe(24, 2);
  Labels rows;
  std::vector<int> site;
  for (int s = 0; s < 4; ++s) {
    for (int k = 0; k < 6; ++k) {
      const Index i = s * 6 + k;
      env.row(i) << k + 0.1 * s, -k;
      spe.row(i) << k - 0.1 * s, k;
      rows.push_back("d" + std::to_string(s) + ".S" + std::to_string(k + 1));
      site.push_back(k);
    }
  }
  const GroupAssignment g(site, labels("S", 6));
  svg::Layer a{env, rows, false, false, g};
  svg::Layer b{spe, rows, true, false, g};
  const std::string doc = svg::emit_factor_map(svg::Panel{"", {a, b}});
  CHECK(count(doc, "class=\"point\"") == 48);
  CHECK(count(doc, "class=\"barycenter\"") == 12);
  CHECK(count(doc, "fill=\"white\" stroke=\"black\"><title>") == 24);
}

TEST_CASE("arrows and panels") {
  svg::Layer vars{mat({{0.5, 0.2}, {-0.3, 0.9}}), {"Temp", "Flow"}, true, true, std::nullopt};
  const std::string one = svg::emit_factor_map(svg::Panel{"", {vars}});
  CHECK(count(one, "class=\"arrow\"") == 2);
  CHECK(count(one, "class=\"point\"") == 0);

  std::vector<svg::Panel> panels;
  for (const char* name : {"autumn", "spring", "summer"}) panels.push_back({name, {vars}});
  const std::string doc = svg::emit_panels(panels);
  CHECK(count(doc, "class=\"panel\"") == 3);
  CHECK(count(doc, "class=\"scale\"") == 3);
  CHECK(doc.find(">summer<") != std::string::npos);
}

TEST_CASE("deterministic and escaped") {
  const Matrix s = mat({{0.123456, -2.5}, {3.25, 1e-3}});
  const std::string a = svg::emit_factor_map(s, {"a<b", "c&d"});
  const std::string b = svg::emit_factor_map(s, {"a<b", "c&d"});
  CHECK(a == b);
  CHECK(a.find("a&lt;b") != std::string::npos);
  CHECK(a.find("c&amp;d") != std::string::npos);
}

TEST_CASE("grid step") {
  CHECK(svg::grid_step(6.0) == doctest::Approx(1.0));
  CHECK(svg::grid_step(1.2) == doctest::Approx(0.2));
  CHECK(svg::grid_step(25.0) == doctest::Approx(5.0));
  CHECK(svg::grid_step(0.0) == 1.0);
  CHECK(svg::grid_step(1e-9) > 0.0);
}

TEST_CASE("errors") {
  CHECK_ERROR_KIND(svg::emit_factor_map(Matrix(0, 2), {}), ErrorKind::EmptyScores);
  CHECK_ERROR_KIND(svg::emit_factor_map(mat({{1}, {2}}), {"a", "b"}), ErrorKind::EmptyScores);
  CHECK_ERROR_KIND(svg::emit_factor_map(mat({{1, 2}}), {"a", "b"}), ErrorKind::DimensionMismatch);
  CHECK_ERROR_KIND(svg::emit_panels({}), ErrorKind::EmptyScores);
}

}  // TEST_SUITE
