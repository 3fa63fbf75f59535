// Command-line front end over the geodiam C API: graph generation, exact
// diameter computation, property reports, and a reproducible benchmark grid.
//
// Exit codes: 0 success, 1 usage, 2 disconnected input, 3 budget exceeded,
// 4 i/o or parse error.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "geodiam.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDisconnected = 2;
constexpr int kExitBudget = 3;
constexpr int kExitIo = 4;

int exit_code_for(geodiam_status status) {
  switch (status) {
    case GEODIAM_OK: return kExitOk;
    case GEODIAM_ERR_DISCONNECTED: return kExitDisconnected;
    case GEODIAM_ERR_BUDGET_EXCEEDED: return kExitBudget;
    case GEODIAM_ERR_IO:
    case GEODIAM_ERR_PARSE: return kExitIo;
    default: return kExitUsage;
  }
}

[[nodiscard]] int report_failure(geodiam_status status) {
  std::cerr << "error: " << geodiam_status_message(status);
  const std::string detail = geodiam_last_error();
  if (!detail.empty()) std::cerr << ": " << detail;
  std::cerr << "\n";
  return exit_code_for(status);
}

struct GraphHandle {
  geodiam_graph* g = nullptr;
  ~GraphHandle() { geodiam_graph_free(g); }
};

struct ReportHandle {
  geodiam_report* r = nullptr;
  ~ReportHandle() { geodiam_report_free(r); }
};

geodiam_space_kind parse_kind(const std::string& kind) {
  if (kind == "square") return GEODIAM_SPACE_SQUARE;
  if (kind == "torus") return GEODIAM_SPACE_TORUS;
  throw CLI::ValidationError("--kind", "expected 'square' or 'torus'");
}

// Largest quadtree level whose cell side is at least factor * r.
int leaf_level_for_factor(uint32_t n, double r, double factor) {
  const double side = std::sqrt(static_cast<double>(n));
  if (side < factor * r) return 0;
  int level = 0;
  while (side / std::pow(2.0, level + 1) >= factor * r) ++level;
  return level;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

// ---- generate --------------------------------------------------------

struct GenerateConfig {
  uint32_t n = 1000;
  double rho = 0.3;
  double radius = 0.0;
  std::string kind = "square";
  uint64_t seed = 0;
  std::string out_path;
};

int cmd_generate(const GenerateConfig& cfg) {
  geodiam_rgg_params params{};
  params.n = cfg.n;
  params.rho = cfg.rho;
  params.radius = cfg.radius;
  params.kind = parse_kind(cfg.kind);
  params.seed = cfg.seed;

  GraphHandle graph;
  if (const auto st = geodiam_generate(&params, &graph.g); st != GEODIAM_OK)
    return report_failure(st);
  if (const auto st = geodiam_graph_write(graph.g, cfg.out_path.c_str()); st != GEODIAM_OK)
    return report_failure(st);

  const uint32_t n = geodiam_graph_n(graph.g);
  const uint64_t m = geodiam_graph_m(graph.g);
  std::cout << "wrote " << cfg.out_path << "\n"
            << "n " << n << "\n"
            << "m " << m << "\n"
            << "avg_degree " << (n ? 2.0 * m / n : 0.0) << "\n"
            << "connected " << (geodiam_graph_is_connected(graph.g) ? "yes" : "no")
            << "\n";
  return kExitOk;
}

// ---- diameter --------------------------------------------------------

struct DiameterConfig {
  std::string in_path;
  std::string algo = "framework";
  int32_t leaf_level = -1;
  double radius = 0.0;
  int64_t k = 0;
  uint64_t budget = 0;
  int64_t ell = 0;
  uint32_t center = 0;
  bool fixed_center = false;
  uint32_t start = 0;
  bool print_json = false;
};

int cmd_diameter(const DiameterConfig& cfg) {
  GraphHandle graph;
  if (const auto st = geodiam_graph_read(cfg.in_path.c_str(), &graph.g); st != GEODIAM_OK)
    return report_failure(st);

  geodiam_diameter_options options;
  geodiam_diameter_options_init(&options);
  if (cfg.algo == "framework")
    options.algo = GEODIAM_ALGO_FRAMEWORK;
  else if (cfg.algo == "ifub")
    options.algo = GEODIAM_ALGO_IFUB;
  else if (cfg.algo == "naive")
    options.algo = GEODIAM_ALGO_NAIVE;
  else
    throw CLI::ValidationError("--algo", "expected framework, ifub, or naive");
  options.leaf_level = cfg.leaf_level;
  options.radius_hint = cfg.radius;
  options.k = cfg.k;
  options.budget = cfg.budget;
  options.decide_ell = cfg.ell;
  options.ifub_use_two_sweep = cfg.fixed_center ? 0 : 1;
  options.ifub_center = cfg.center;
  options.ifub_start = cfg.start;

  ReportHandle report;
  const auto st = geodiam_diameter(graph.g, &options, &report.r);
  if (st != GEODIAM_OK && !(st == GEODIAM_ERR_BUDGET_EXCEEDED && report.r)) {
    return report_failure(st);
  }

  const json body = json::parse(geodiam_report_json(report.r));
  if (cfg.print_json) {
    std::cout << body.dump(2) << "\n";
  } else {
    if (body.contains("verdict") && body["verdict"] != "equal_or_greater") {
      std::cout << "verdict " << body["verdict"].get<std::string>() << " (ell "
                << cfg.ell << ")\n";
    } else {
      std::cout << "diameter " << geodiam_report_diameter(report.r) << "\n";
    }
    std::cout << "algo " << cfg.algo << "\n";
    if (cfg.algo == "framework") {
      std::cout << "leaf_level " << body["leaf_level"].get<int>() << "\n"
                << "k " << body["k"].get<int64_t>() << "\n";
      if (body.contains("candidate_pairs_per_step")) {
        std::cout << "candidate_pairs_per_level";
        for (const auto& c : body["candidate_pairs_per_step"])
          std::cout << ' ' << c.get<uint64_t>();
        std::cout << "\n";
      }
      if (body.contains("maxdist_direct_used"))
        std::cout << "maxdist_direct " << body["maxdist_direct_used"].get<uint64_t>()
                  << "\n"
                  << "maxdist_overlay " << body["maxdist_overlay_used"].get<uint64_t>()
                  << "\n";
      std::cout << "oracle_build_ops " << body["oracle_build_ops"].get<uint64_t>() << "\n"
                << "search_ops " << body["search_ops"].get<uint64_t>() << "\n";
    }
    if (cfg.algo == "ifub") {
      std::cout << "center " << body["center"].get<uint64_t>() << "\n"
                << "fringe_bfs " << body["fringe_bfs"].get<uint64_t>() << "\n"
                << "explored_fraction " << body["fringe_fraction"].get<double>() << "\n";
    }
    std::cout << "ops_total " << geodiam_report_total_ops(report.r) << "\n";
  }
  return st == GEODIAM_OK ? kExitOk : exit_code_for(st);
}

// ---- properties ------------------------------------------------------

struct PropertiesConfig {
  std::string in_path;
  std::string properties = "stretch,3,concentration";
  std::string out_path;
  int32_t leaf_level = -1;
  double radius = 0.0;
  uint64_t seed = 0;
  std::string label;
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

int cmd_properties(const PropertiesConfig& cfg) {
  GraphHandle graph;
  if (const auto st = geodiam_graph_read(cfg.in_path.c_str(), &graph.g); st != GEODIAM_OK)
    return report_failure(st);

  geodiam_properties_options options;
  geodiam_properties_options_init(&options);
  options.properties = cfg.properties.c_str();
  options.leaf_level = cfg.leaf_level;
  options.radius_hint = cfg.radius;
  options.seed = cfg.seed;
  if (!cfg.label.empty()) options.instance_label = cfg.label.c_str();

  ReportHandle report;
  if (const auto st = geodiam_properties(graph.g, &options, &report.r); st != GEODIAM_OK)
    return report_failure(st);

  const json body = json::parse(geodiam_report_json(report.r));
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) {
      std::cerr << "error: cannot open '" << cfg.out_path << "' for writing\n";
      return kExitIo;
    }
    out = &file;
  }
  *out << "schema,property,instance,param,stat,value,exact,pass\n";
  for (const auto& row : body["rows"]) {
    *out << body["schema"].get<int>() << ',' << csv_escape(row["property"]) << ','
         << csv_escape(row["instance"]) << ',' << csv_escape(row["param"]) << ','
         << csv_escape(row["stat"]) << ',' << row["value"].get<double>() << ','
         << (row["exact"].get<bool>() ? 1 : 0) << ',';
    if (row["pass"].is_null())
      *out << "";
    else
      *out << (row["pass"].get<bool>() ? "PASS" : "FAIL");
    *out << "\n";
  }
  if (!cfg.out_path.empty())
    std::cout << "wrote " << cfg.out_path << " (" << body["rows"].size() << " rows)\n";
  return kExitOk;
}

// ---- bench -----------------------------------------------------------

struct BenchConfig {
  std::string ns = "500,1000,2000";
  std::string rhos = "0.2,0.3";
  std::string kinds = "square,torus";
  std::string algos = "framework,ifub,naive";
  std::string seeds = "1,2,3";
  std::string out_path;
  unsigned jobs = 1;
  double leaf_cell_factor = 0.95;
};

struct BenchCell {
  uint32_t n;
  double rho;
  std::string kind;
  std::string algo;
  uint64_t seed;
};

struct BenchRow {
  bool skipped = false;
  std::string skip_reason;
  int64_t diameter = -1;
  uint64_t ops_total = 0;
  uint64_t search_ops = 0;
  uint64_t oracle_build_ops = 0;
  uint64_t fringe_bfs = 0;
  uint64_t proxy_nm = 0;
  uint64_t m = 0;
  double wall_ms = 0.0;
};

BenchRow run_bench_cell(const BenchCell& cell, double leaf_cell_factor) {
  BenchRow row;
  geodiam_rgg_params params{};
  params.n = cell.n;
  params.rho = cell.rho;
  params.radius = 0.0;
  params.kind = cell.kind == "torus" ? GEODIAM_SPACE_TORUS : GEODIAM_SPACE_SQUARE;
  params.seed = cell.seed;

  GraphHandle graph;
  if (const auto st = geodiam_generate(&params, &graph.g); st != GEODIAM_OK) {
    row.skipped = true;
    row.skip_reason = geodiam_last_error();
    return row;
  }
  row.m = geodiam_graph_m(graph.g);
  row.proxy_nm = static_cast<uint64_t>(cell.n) * row.m;

  geodiam_diameter_options options;
  geodiam_diameter_options_init(&options);
  const double radius = std::pow(static_cast<double>(cell.n), cell.rho);
  options.radius_hint = radius;
  if (cell.algo == "framework") {
    options.algo = GEODIAM_ALGO_FRAMEWORK;
    options.leaf_level = leaf_level_for_factor(cell.n, radius, leaf_cell_factor);
  } else if (cell.algo == "ifub") {
    options.algo = GEODIAM_ALGO_IFUB;
  } else {
    options.algo = GEODIAM_ALGO_NAIVE;
  }

  const auto t0 = std::chrono::steady_clock::now();
  ReportHandle report;
  if (const auto st = geodiam_diameter(graph.g, &options, &report.r); st != GEODIAM_OK) {
    row.skipped = true;
    row.skip_reason = geodiam_last_error();
    return row;
  }
  row.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();

  const json body = json::parse(geodiam_report_json(report.r));
  row.diameter = geodiam_report_diameter(report.r);
  row.ops_total = geodiam_report_total_ops(report.r);
  if (body.contains("search_ops")) row.search_ops = body["search_ops"].get<uint64_t>();
  if (body.contains("oracle_build_ops"))
    row.oracle_build_ops = body["oracle_build_ops"].get<uint64_t>();
  if (body.contains("fringe_bfs")) row.fringe_bfs = body["fringe_bfs"].get<uint64_t>();
  return row;
}

int cmd_bench(const BenchConfig& cfg) {
  std::vector<BenchCell> cells;
  for (const auto& n_str : split_csv(cfg.ns))
    for (const auto& rho_str : split_csv(cfg.rhos))
      for (const auto& kind : split_csv(cfg.kinds))
        for (const auto& algo : split_csv(cfg.algos))
          for (const auto& seed_str : split_csv(cfg.seeds))
            cells.push_back(BenchCell{static_cast<uint32_t>(std::stoul(n_str)),
                                      std::stod(rho_str), kind, algo,
                                      std::stoull(seed_str)});

  std::vector<BenchRow> rows(cells.size());
  std::atomic<size_t> next{0};
  const unsigned jobs = std::max(1u, cfg.jobs);
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < jobs; ++t) {
    workers.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1))
        rows[i] = run_bench_cell(cells[i], cfg.leaf_cell_factor);
    });
  }
  for (auto& w : workers) w.join();

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) {
      std::cerr << "error: cannot open '" << cfg.out_path << "' for writing\n";
      return kExitIo;
    }
    out = &file;
  }
  *out << "schema,n,rho,kind,algo,seed,diameter,m,ops_total,search_ops,"
          "oracle_build_ops,fringe_bfs,naive_proxy_nm,wall_ms\n";
  for (size_t i = 0; i < cells.size(); ++i) {
    const auto& cell = cells[i];
    const auto& row = rows[i];
    if (row.skipped) {
      std::cerr << "skipped n=" << cell.n << " rho=" << cell.rho << " kind="
                << cell.kind << " algo=" << cell.algo << " seed=" << cell.seed << ": "
                << row.skip_reason << "\n";
      continue;
    }
    *out << 1 << ',' << cell.n << ',' << cell.rho << ',' << cell.kind << ','
         << cell.algo << ',' << cell.seed << ',' << row.diameter << ',' << row.m << ','
         << row.ops_total << ',' << row.search_ops << ',' << row.oracle_build_ops << ','
         << row.fringe_bfs << ',' << row.proxy_nm << ',' << row.wall_ms << "\n";
  }
  if (!cfg.out_path.empty()) std::cout << "wrote " << cfg.out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodiam: exact diameter toolkit for geometric graphs"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML file");
  bool dump_config = false;
  app.add_flag("--dump-config", dump_config, "Print the resolved configuration");

  GenerateConfig gen;
  auto* cmd_gen = app.add_subcommand("generate", "Sample a random geometric graph");
  cmd_gen->add_option("--n", gen.n, "Vertex count")->required();
  cmd_gen->add_option("--rho", gen.rho, "Radius exponent, r = n^rho (0 < rho < 1/2)");
  cmd_gen->add_option("--radius", gen.radius, "Explicit connection radius (overrides rho)");
  cmd_gen->add_option("--kind", gen.kind, "Ground space: square or torus");
  cmd_gen->add_option("--seed", gen.seed, "Generator seed");
  cmd_gen->add_option("--out", gen.out_path, "Output graph file")->required();

  DiameterConfig diam;
  auto* cmd_diam = app.add_subcommand("diameter", "Compute the exact diameter");
  cmd_diam->add_option("--in", diam.in_path, "Input graph file")->required();
  cmd_diam->add_option("--algo", diam.algo, "framework, ifub, or naive");
  cmd_diam->add_option("--leaf-level", diam.leaf_level,
                       "Quadtree leaf level override (framework)");
  cmd_diam->add_option("--radius", diam.radius,
                       "Connection radius hint (default: longest edge)");
  cmd_diam->add_option("--k", diam.k, "Block-size override for the search (framework)");
  cmd_diam->add_option("--budget", diam.budget, "Operation budget for --ell mode");
  cmd_diam->add_option("--ell", diam.ell,
                       "Run a single decide against this diameter guess");
  cmd_diam->add_option("--center", diam.center, "Fixed iFUB center vertex")
      ->each([&diam](const std::string&) { diam.fixed_center = true; });
  cmd_diam->add_option("--start", diam.start, "2-sweep start vertex (ifub)");
  cmd_diam->add_flag("--json", diam.print_json, "Print the full JSON report");

  PropertiesConfig props;
  auto* cmd_props = app.add_subcommand("properties", "Run property verifiers");
  cmd_props->add_option("--in", props.in_path, "Input graph file")->required();
  cmd_props->add_option("--properties", props.properties,
                        "Comma list of 1,2,3,4,5,stretch,concentration");
  cmd_props->add_option("--out", props.out_path, "Output CSV (default: stdout)");
  cmd_props->add_option("--leaf-level", props.leaf_level, "Quadtree leaf level override");
  cmd_props->add_option("--radius", props.radius, "Connection radius hint");
  cmd_props->add_option("--seed", props.seed, "Sampling seed");
  cmd_props->add_option("--label", props.label, "Instance label for the CSV");

  BenchConfig bench;
  auto* cmd_bn = app.add_subcommand("bench", "Benchmark grid, one CSV row per cell");
  cmd_bn->add_option("--ns", bench.ns, "Comma list of vertex counts");
  cmd_bn->add_option("--rhos", bench.rhos, "Comma list of radius exponents");
  cmd_bn->add_option("--kinds", bench.kinds, "Comma list of ground spaces");
  cmd_bn->add_option("--algos", bench.algos, "Comma list of algorithms");
  cmd_bn->add_option("--seeds", bench.seeds, "Comma list of seeds");
  cmd_bn->add_option("--out", bench.out_path, "Output CSV (default: stdout)");
  cmd_bn->add_option("--jobs", bench.jobs, "Concurrent cells");
  cmd_bn->add_option("--leaf-cell-factor", bench.leaf_cell_factor,
                     "Leaf cell side as a multiple of r (framework cells)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (dump_config) std::cout << app.config_to_str(true, false);

  try {
    if (cmd_gen->parsed()) return cmd_generate(gen);
    if (cmd_diam->parsed()) return cmd_diameter(diam);
    if (cmd_props->parsed()) return cmd_properties(props);
    if (cmd_bn->parsed()) return cmd_bench(bench);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
