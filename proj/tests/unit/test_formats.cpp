#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "swave/config.hpp"
#include "swave/csv.hpp"
#include "swave/svg.hpp"

using namespace swave;

TEST_CASE("format_full round-trips doubles exactly") {
  for (double v : {1.0 / 3.0, 1e-17, 3.14159265358979323846, -0.1, 12345.6789012345678}) {
    CHECK(std::stod(format_full(v)) == v);
  }
}

TEST_CASE("error table CSV round trip is exact") {
  ErrorTable table;
  table.rows.push_back({"stm", 1.0 / 3.0, 1.0 / 7.0, 1, 1.234567890123456e-3, 5.5e-5, 100, false});
  table.rows.push_back({"sv", 0.25, 0.125, 2, 0.0, 0.0, 100, true});
  const std::string path = "/tmp/swave_test_errors.csv";
  write_error_csv(path, table);
  ErrorTable back = read_error_csv(path);
  REQUIRE(back.rows.size() == 2);
  CHECK(back.rows[0].scheme == "stm");
  CHECK(back.rows[0].h == table.rows[0].h);
  CHECK(back.rows[0].k == table.rows[0].k);
  CHECK(back.rows[0].rmse == table.rows[0].rmse);
  CHECK(back.rows[0].se == table.rows[0].se);
  CHECK(back.rows[0].samples == 100);
  CHECK_FALSE(back.rows[0].exploded);
  CHECK(back.rows[1].exploded);
  CHECK(back.rows[1].component == 2);

  // Writing again produces byte-identical text.
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text == error_table_csv(back));
}

TEST_CASE("energy CSV round trip") {
  std::vector<EnergyCurve> curves;
  curves.push_back({"stm", {{0.0, 1.5, 0.0, 1.5}, {1.0, 2.5, 0.01, 2.5}}});
  curves.push_back({"bem", {{0.0, 1.5, 0.0, 1.5}}});
  const std::string path = "/tmp/swave_test_energy.csv";
  write_energy_csv(path, curves);
  auto back = read_energy_csv(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0].scheme == "stm");
  REQUIRE(back[0].points.size() == 2);
  CHECK(back[0].points[1].energy == 2.5);
  CHECK(back[0].points[1].se == 0.01);
  CHECK(back[1].points[0].exact_energy == 1.5);
}

TEST_CASE("CSV readers reject malformed input") {
  const std::string path = "/tmp/swave_test_bad.csv";
  std::ofstream(path) << "not,a,header\n";
  CHECK_THROWS(read_error_csv(path));
  CHECK_THROWS(read_error_csv("/tmp/swave_does_not_exist.csv"));
}

TEST_CASE("config parsing, overrides and validation") {
  ExperimentConfig cfg = parse_config_text(
      R"({"problem":"linear","s":1.0,"T":2.0,"M":10,"k_list":[0.5,0.25],
          "n_cells_list":[4,8],"k_exact":0.125,"schemes":["stm","bem"]})",
      {});
  CHECK(cfg.s == 1.0);
  CHECK(cfg.samples == 10);
  CHECK(cfg.k_list.size() == 2);
  CHECK(cfg.schemes.size() == 2);

  ConfigOverrides ov;
  ov.samples = 50;
  ov.seed = 123;
  cfg = parse_config_text(R"({"M":10})", ov);
  CHECK(cfg.samples == 50);
  CHECK(cfg.seed == 123);

  CHECK_THROWS_AS(parse_config_text(R"({"bogus":1})", {}), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"problem":"heat"})", {}), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"M":1})", {}), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"schemes":["euler"]})", {}), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"k_list":[0.3],"k_exact":0.125})", {}), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"k_list":[0.0625],"k_exact":0.125})", {}), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"n_cells_list":[1]})", {}), ConfigError);
  CHECK_THROWS_AS(parse_config_text(R"({"n_cells_list":[16],"n_cells_exact":16})", {}),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text("{oops", {}), ConfigError);
  try {
    parse_config_text(R"({"T":-1.0})", {});
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(e.key() == "T");
  }
}

TEST_CASE("config hash and manifest") {
  ExperimentConfig a, b;
  b.seed = a.seed + 1;
  CHECK(config_hash(a) == config_hash(ExperimentConfig{}));
  CHECK(config_hash(a) != config_hash(b));

  const std::string path = "/tmp/swave_test_manifest.json";
  write_manifest(path, a, {{"temporal", 1.25}});
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"seed\"") != std::string::npos);
  CHECK(text.find("counter-mix64") != std::string::npos);
  CHECK(text.find("temporal") != std::string::npos);
}

TEST_CASE("SVG rendering contract") {
  PlotSpec spec;
  spec.title = "demo";
  spec.loglog = true;
  spec.series.push_back({"a", {0.5, 0.25, 0.125}, {1e-2, 5e-3, 2.5e-3}});
  spec.references.push_back({1.0, "slope 1"});
  std::string svg = render_plot(spec);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("slope 1") != std::string::npos);

  CHECK_THROWS_AS(render_plot(PlotSpec{}), std::invalid_argument);
  PlotSpec bad = spec;
  bad.series[0].y[1] = -1.0;
  CHECK_THROWS_AS(render_plot(bad), std::invalid_argument);
  PlotSpec ragged = spec;
  ragged.series[0].y.pop_back();
  CHECK_THROWS_AS(render_plot(ragged), std::invalid_argument);

  // Linear axes accept nonpositive values.
  PlotSpec lin;
  lin.series.push_back({"b", {0.0, 1.0, 2.0}, {-1.0, 0.0, 1.0}});
  CHECK_NOTHROW(render_plot(lin));
}
