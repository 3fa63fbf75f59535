#include "geodiam.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <memory>
#include <optional>
#include <string>

#include "json.hpp"

#include "diameter.hpp"
#include "errors.hpp"
#include "graphgen.hpp"
#include "ifub.hpp"
#include "oracle.hpp"
#include "propcheck.hpp"

using nlohmann::json;

struct geodiam_graph {
  geodiam::GeometricGraph g;
};

struct geodiam_report {
  std::string json_body;
  int64_t diameter = -1;
  uint64_t total_ops = 0;
};

namespace {

thread_local std::string t_last_error;

geodiam_status fail(geodiam_status status, const std::string& message) {
  t_last_error = message;
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
geodiam_status guarded(Fn&& fn) {
  try {
    t_last_error.clear();
    return fn();
  } catch (const geodiam::DisconnectedError& e) {
    return fail(GEODIAM_ERR_DISCONNECTED, e.what());
  } catch (const geodiam::ParseError& e) {
    return fail(GEODIAM_ERR_PARSE, e.what());
  } catch (const geodiam::IoError& e) {
    return fail(GEODIAM_ERR_IO, e.what());
  } catch (const geodiam::NeedSmallerLeavesError& e) {
    return fail(GEODIAM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const geodiam::OracleSizeError& e) {
    return fail(GEODIAM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const geodiam::InvalidArgumentError& e) {
    return fail(GEODIAM_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(GEODIAM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GEODIAM_ERR_INTERNAL, "unknown error");
  }
}

geodiam::SpaceKind to_kind(geodiam_space_kind kind) {
  return kind == GEODIAM_SPACE_TORUS ? geodiam::SpaceKind::Torus
                                     : geodiam::SpaceKind::Square;
}

double resolve_radius(const geodiam::GeometricGraph& g, double hint) {
  if (hint > 0.0) return hint;
  const double inferred = geodiam::max_edge_length(g);
  return inferred > 0.0 ? inferred : 1.0;
}

json graph_header(const geodiam::GeometricGraph& g) {
  return json{{"n", g.num_vertices()},
              {"m", g.num_edges()},
              {"kind", geodiam::to_string(g.space().kind)},
              {"side", g.space().side}};
}

geodiam_status run_framework(const geodiam::GeometricGraph& g,
                             const geodiam_diameter_options& options,
                             geodiam_report** out) {
  using namespace geodiam;
  const double radius = resolve_radius(g, options.radius_hint);
  const int leaf_level =
      options.leaf_level >= 0 ? options.leaf_level : default_leaf_level(g.num_vertices(), radius);
  RecursivePartition partition = RecursivePartition::induce(g, leaf_level, radius);

  WorkTally build_tally;
  DistanceOracle oracle(g, partition, {}, &build_tally);

  json body = graph_header(g);
  body["algo"] = "framework";
  body["leaf_level"] = leaf_level;
  body["radius"] = radius;
  body["trivial_partition"] = partition.trivial();
  body["small_cell_warning"] = partition.small_cell_warning;
  body["partition_nodes"] = partition.num_nodes();
  body["max_leaf_size"] = partition.max_leaf_size();
  body["oracle_entries"] = oracle.total_entries();
  body["oracle_build_ops"] = build_tally.total();
  const uint64_t proxy =
      static_cast<uint64_t>(g.num_vertices()) * std::max<uint64_t>(1, g.num_edges());
  body["naive_proxy_nm"] = proxy;

  int64_t diameter = -1;
  if (options.decide_ell > 0) {
    // Forced single-decide mode.
    DecideOptions dopt;
    dopt.k = options.k > 0 ? static_cast<uint32_t>(options.k)
                           : std::max(1u, partition.max_leaf_size());
    dopt.budget = options.budget > 0 ? options.budget : UINT64_MAX;
    DecideTrace trace;
    const DiameterVerdict verdict =
        decide(oracle, static_cast<Dist>(options.decide_ell), dopt, &trace);
    body["mode"] = "decide";
    body["ell"] = options.decide_ell;
    body["k"] = dopt.k;
    body["search_ops"] = verdict.work;
    body["ops_total"] = build_tally.total() + verdict.work;
    switch (verdict.outcome) {
      case Outcome::Timeout: {
        auto report = std::make_unique<geodiam_report>();
        body["verdict"] = "timeout";
        report->json_body = body.dump();
        report->total_ops = build_tally.total() + verdict.work;
        *out = report.release();
        return fail(GEODIAM_ERR_BUDGET_EXCEEDED,
                    "decide exceeded the operation budget (diameter guess likely "
                    "below the true diameter)");
      }
      case Outcome::Less:
        body["verdict"] = "less";
        break;
      case Outcome::EqualOrGreater:
        body["verdict"] = "equal_or_greater";
        body["diameter"] = verdict.diameter;
        diameter = verdict.diameter;
        break;
    }
    const CandidateStats stats = candidate_stats(trace);
    body["final_pairs"] = trace.final_pairs.size();
    body["max_candidates_per_block"] = stats.max_partners_per_block;
    body["blocks_owning_candidates"] = stats.blocks_with_candidates;
    auto report = std::make_unique<geodiam_report>();
    report->diameter = diameter;
    report->total_ops = build_tally.total() + verdict.work;
    report->json_body = body.dump();
    *out = report.release();
    return GEODIAM_OK;
  }

  ComputeOptions copt;
  if (options.k > 0) copt.k_override = static_cast<uint32_t>(options.k);
  if (options.budget > 0) copt.initial_budget = options.budget;
  const ComputeResult result = compute_diameter(oracle, copt);
  diameter = result.diameter;

  const CandidateStats stats = candidate_stats(result.final_trace);
  body["mode"] = "compute";
  body["diameter"] = result.diameter;
  body["k"] = result.chosen_k;
  body["final_budget"] = result.final_budget;
  body["decide_calls"] = result.decide_calls;
  body["search_ops"] = result.search_work;
  body["ops_total"] = build_tally.total() + result.search_work;
  body["candidate_pairs_per_step"] = result.final_trace.pairs_after_step;
  body["final_pairs"] = result.final_trace.final_pairs.size();
  body["final_blocks"] = result.final_trace.final_blocks.size();
  body["max_candidates_per_block"] = stats.max_partners_per_block;
  body["blocks_owning_candidates"] = stats.blocks_with_candidates;
  body["maxdist_direct_used"] = result.final_trace.direct_used;
  body["maxdist_overlay_used"] = result.final_trace.overlay_used;

  auto report = std::make_unique<geodiam_report>();
  report->diameter = diameter;
  report->total_ops = build_tally.total() + result.search_work;
  report->json_body = body.dump();
  *out = report.release();
  return GEODIAM_OK;
}

geodiam_status run_ifub(const geodiam::GeometricGraph& g,
                        const geodiam_diameter_options& options, geodiam_report** out) {
  using namespace geodiam;
  uint64_t edge_work = 0;
  CenterStrategy strategy;
  if (options.ifub_use_two_sweep)
    strategy = TwoSweepCenter{options.ifub_start};
  else
    strategy = FixedCenter{options.ifub_center};
  const IfubResult result = ifub(g, strategy, &edge_work);

  json body = graph_header(g);
  body["algo"] = "ifub";
  body["diameter"] = result.diameter;
  body["center"] = result.trace.center;
  body["two_sweep"] = options.ifub_use_two_sweep != 0;
  body["fringe_bfs"] = result.trace.fringe_bfs;
  body["total_bfs"] = result.trace.total_bfs;
  body["fringe_fraction"] =
      static_cast<double>(result.trace.fringe_bfs) / g.num_vertices();
  body["ops_total"] = edge_work;
  const auto bounds = explored_bounds_check(result.trace, result.diameter);
  body["explored_lower_inclusion"] = bounds.lower_inclusion_holds;
  body["explored_upper_inclusion"] = bounds.upper_inclusion_holds;

  auto report = std::make_unique<geodiam_report>();
  report->diameter = result.diameter;
  report->total_ops = edge_work;
  report->json_body = body.dump();
  *out = report.release();
  return GEODIAM_OK;
}

geodiam_status run_naive(const geodiam::GeometricGraph& g, geodiam_report** out) {
  using namespace geodiam;
  uint64_t edge_work = 0;
  const Dist diameter = naive_diameter(g, &edge_work);

  json body = graph_header(g);
  body["algo"] = "naive";
  body["diameter"] = diameter;
  body["ops_total"] = edge_work;
  body["naive_proxy_nm"] =
      static_cast<uint64_t>(g.num_vertices()) * std::max<uint64_t>(1, g.num_edges());

  auto report = std::make_unique<geodiam_report>();
  report->diameter = diameter;
  report->total_ops = edge_work;
  report->json_body = body.dump();
  *out = report.release();
  return GEODIAM_OK;
}

}  // namespace

extern "C" {

const char* geodiam_version(void) { return "1.0.0"; }

const char* geodiam_status_message(geodiam_status status) {
  switch (status) {
    case GEODIAM_OK: return "ok";
    case GEODIAM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GEODIAM_ERR_DISCONNECTED: return "graph is disconnected";
    case GEODIAM_ERR_BUDGET_EXCEEDED: return "operation budget exceeded";
    case GEODIAM_ERR_IO: return "i/o error";
    case GEODIAM_ERR_PARSE: return "parse error";
    case GEODIAM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* geodiam_last_error(void) { return t_last_error.c_str(); }

geodiam_status geodiam_generate(const geodiam_rgg_params* params, geodiam_graph** out) {
  if (!params || !out) return fail(GEODIAM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    geodiam::RggParams p;
    p.n = params->n;
    if (params->radius > 0.0)
      p.radius = params->radius;
    else
      p.rho = params->rho;
    p.kind = to_kind(params->kind);
    p.seed = params->seed;
    auto handle = std::make_unique<geodiam_graph>();
    handle->g = geodiam::sample_rgg(p);
    *out = handle.release();
    return GEODIAM_OK;
  });
}

geodiam_status geodiam_graph_from_points(geodiam_space_kind kind, double side,
                                         const double* xy, uint32_t n, double radius,
                                         geodiam_graph** out) {
  if (!xy || !out) return fail(GEODIAM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<geodiam::Point> points(n);
    for (uint32_t i = 0; i < n; ++i) points[i] = {xy[2 * i], xy[2 * i + 1]};
    auto handle = std::make_unique<geodiam_graph>();
    handle->g = geodiam::build_geometric_graph({to_kind(kind), side}, std::move(points),
                                               radius);
    *out = handle.release();
    return GEODIAM_OK;
  });
}

geodiam_status geodiam_graph_read(const char* path, geodiam_graph** out) {
  if (!path || !out) return fail(GEODIAM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto handle = std::make_unique<geodiam_graph>();
    handle->g = geodiam::read_graph(path);
    *out = handle.release();
    return GEODIAM_OK;
  });
}

geodiam_status geodiam_graph_write(const geodiam_graph* g, const char* path) {
  if (!g || !path) return fail(GEODIAM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    geodiam::write_graph(g->g, path);
    return GEODIAM_OK;
  });
}

void geodiam_graph_free(geodiam_graph* g) { delete g; }

uint32_t geodiam_graph_n(const geodiam_graph* g) { return g->g.num_vertices(); }
uint64_t geodiam_graph_m(const geodiam_graph* g) { return g->g.num_edges(); }

geodiam_space_kind geodiam_graph_kind(const geodiam_graph* g) {
  return g->g.space().kind == geodiam::SpaceKind::Torus ? GEODIAM_SPACE_TORUS
                                                        : GEODIAM_SPACE_SQUARE;
}

double geodiam_graph_side(const geodiam_graph* g) { return g->g.space().side; }

uint32_t geodiam_graph_max_degree(const geodiam_graph* g) {
  return geodiam::max_degree(g->g);
}

int geodiam_graph_is_connected(const geodiam_graph* g) {
  return geodiam::is_connected(g->g) ? 1 : 0;
}

void geodiam_diameter_options_init(geodiam_diameter_options* options) {
  if (!options) return;
  std::memset(options, 0, sizeof *options);
  options->algo = GEODIAM_ALGO_FRAMEWORK;
  options->leaf_level = -1;
  options->radius_hint = 0.0;
  options->k = 0;
  options->budget = 0;
  options->decide_ell = 0;
  options->ifub_use_two_sweep = 1;
}

geodiam_status geodiam_diameter(const geodiam_graph* g,
                                const geodiam_diameter_options* options,
                                geodiam_report** out) {
  if (!g || !options || !out) return fail(GEODIAM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() -> geodiam_status {
    switch (options->algo) {
      case GEODIAM_ALGO_FRAMEWORK: return run_framework(g->g, *options, out);
      case GEODIAM_ALGO_IFUB: return run_ifub(g->g, *options, out);
      case GEODIAM_ALGO_NAIVE: return run_naive(g->g, out);
    }
    return fail(GEODIAM_ERR_INVALID_ARGUMENT, "unknown algorithm");
  });
}

void geodiam_properties_options_init(geodiam_properties_options* options) {
  if (!options) return;
  std::memset(options, 0, sizeof *options);
  options->properties = "stretch,3,concentration";
  options->leaf_level = -1;
  options->radius_hint = 0.0;
  options->seed = 0;
  options->instance_label = nullptr;
}

geodiam_status geodiam_properties(const geodiam_graph* g,
                                  const geodiam_properties_options* options,
                                  geodiam_report** out) {
  if (!g || !options || !out) return fail(GEODIAM_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() -> geodiam_status {
    using namespace geodiam;
    const GeometricGraph& graph = g->g;
    const double radius = resolve_radius(graph, options->radius_hint);

    std::string label;
    if (options->instance_label) {
      label = options->instance_label;
    } else {
      label = std::string(to_string(graph.space().kind)) + " n=" +
              std::to_string(graph.num_vertices());
    }

    // Parse the selection.
    std::vector<std::string> selected;
    {
      std::string spec = options->properties ? options->properties : "";
      size_t pos = 0;
      while (pos <= spec.size()) {
        const size_t comma = spec.find(',', pos);
        const std::string tok =
            spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!tok.empty()) selected.push_back(tok);
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      if (selected.empty())
        throw InvalidArgumentError("empty property selection");
      for (const auto& tok : selected)
        if (tok != "1" && tok != "2" && tok != "3" && tok != "4" && tok != "5" &&
            tok != "stretch" && tok != "concentration")
          throw InvalidArgumentError("unknown property id '" + tok +
                                     "' (expected 1,2,3,4,5,stretch,concentration)");
    }
    const auto wants = [&](const char* id) {
      return std::find(selected.begin(), selected.end(), id) != selected.end();
    };

    constexpr uint32_t kAllPairsBudget = 3000;
    if ((wants("1") || wants("2")) && graph.num_vertices() > kAllPairsBudget)
      throw InvalidArgumentError(
          "properties 1 and 2 need all-pairs distances, refused for n > " +
          std::to_string(kAllPairsBudget) + " (n=" + std::to_string(graph.num_vertices()) +
          ")");

    PropertyReport rows;
    const auto append = [&rows](PropertyReport&& part) {
      for (auto& row : part) rows.push_back(std::move(row));
    };

    if (wants("stretch")) {
      append(check_lower_stretch(graph, radius, label, options->seed));
      append(measure_upper_stretch(graph, radius, label, options->seed));
    }

    std::optional<RecursivePartition> partition;
    std::optional<std::vector<Dist>> diams;
    const auto ensure_partition = [&] {
      if (!partition) {
        const int level = options->leaf_level >= 0
                              ? options->leaf_level
                              : default_leaf_level(graph.num_vertices(), radius);
        partition = RecursivePartition::induce(graph, level, radius);
      }
    };
    const auto ensure_diams = [&] {
      ensure_partition();
      if (!diams) diams = block_diameters(graph, *partition);
    };

    if (wants("1") || wants("2")) {
      const AllPairs ap = compute_all_pairs(graph);
      const Dist diam = ap.diameter();
      if (diam >= kUnreachable) throw DisconnectedError(0, 0);
      std::vector<Dist> x_grid{1, 2, 4, 8};
      for (Dist& x : x_grid) x = std::min<Dist>(x, std::max<Dist>(1, diam));
      x_grid.erase(std::unique(x_grid.begin(), x_grid.end()), x_grid.end());
      if (wants("1"))
        append(measure_local_partners(graph, ap, radius, x_grid, label, options->seed));
      if (wants("2")) append(measure_few_corners(graph, ap, radius, x_grid, label));
    }
    if (wants("3")) {
      ensure_partition();
      const double beta = std::log(radius) / std::log(std::max(2.0, double(graph.num_vertices())));
      append(check_partition_shape(*partition, 0.5, beta, label));
    }
    if (wants("4")) {
      ensure_diams();
      append(check_size_dependent_diameters(graph, *partition, *diams, radius, label));
    }
    if (wants("5")) {
      ensure_diams();
      std::vector<Dist> radii{2, 4, 8, 16};
      append(measure_fragmentation(graph, *partition, *diams, radii, label, options->seed));
    }
    if (wants("concentration")) {
      ensure_partition();
      append(check_block_concentration(graph, *partition, radius, label));
    }

    json body;
    body["schema"] = 1;
    json jrows = json::array();
    for (const auto& row : rows) {
      json jr{{"property", row.property}, {"instance", row.instance},
              {"param", row.param},       {"stat", row.stat},
              {"value", row.value},       {"exact", row.exact}};
      if (row.pass)
        jr["pass"] = *row.pass;
      else
        jr["pass"] = nullptr;
      jrows.push_back(std::move(jr));
    }
    body["rows"] = std::move(jrows);

    auto report = std::make_unique<geodiam_report>();
    report->json_body = body.dump();
    *out = report.release();
    return GEODIAM_OK;
  });
}

const char* geodiam_report_json(const geodiam_report* report) {
  return report->json_body.c_str();
}

int64_t geodiam_report_diameter(const geodiam_report* report) {
  return report->diameter;
}

uint64_t geodiam_report_total_ops(const geodiam_report* report) {
  return report->total_ops;
}

void geodiam_report_free(geodiam_report* report) { delete report; }

}  // extern "C"
