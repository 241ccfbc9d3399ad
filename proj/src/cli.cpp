#include "fixpar/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fixpar/enumeration.hpp"
#include "fixpar/graph.hpp"
#include "fixpar/orientation.hpp"
#include "fixpar/parity_trials.hpp"
#include "fixpar/subgraph.hpp"
#include "fixpar/verify.hpp"

namespace fixpar::cli {
namespace {

using nlohmann::json;

struct GlobalOptions {
  std::string backend = "float";
  double tol = 1e-9;
  int cap = 22;
  std::uint64_t seed = 20240901;
  long long samples = 200000;
  std::string format = "json";
  int jobs = 1;

  bool exact() const { return backend == "rational"; }
  SamplingOptions sampling() const { return {samples, seed}; }
};

template <class S>
S backend_tol(const GlobalOptions& g) {
  if constexpr (scalar_traits<S>::exact)
    return S(0);
  else
    return g.tol;
}

template <class S>
S parse_bias_text(const std::string& text) {
  S p = parse_scalar<S>(text);
  if (p <= S(0) || p >= S(1)) throw FixparError("bias must lie strictly between 0 and 1");
  return p;
}

Parity parse_parity(const std::string& text) {
  if (text == "even") return Parity::even;
  if (text == "odd") return Parity::odd;
  throw FixparError("parity must be 'even' or 'odd'");
}

MultiGraph load_graph(const std::string& path) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw FixparError("cannot open graph file: " + path);
    buffer << in.rdbuf();
  }
  return parse_graph(buffer.str());
}

template <class S>
json pmf_json(const Pmf<S>& d) {
  json out;
  out["offset"] = 0;
  json masses = json::array();
  for (const S& m : d.masses()) masses.push_back(to_double<S>(m));
  out["masses"] = std::move(masses);
  if constexpr (scalar_traits<S>::exact) {
    json exact = json::array();
    for (const S& m : d.masses()) exact.push_back(scalar_to_string<S>(m));
    out["masses_exact"] = std::move(exact);
  }
  return out;
}

json graph_json(const MultiGraph& g) {
  return {{"vertices", g.vertex_count}, {"edges", g.edge_count()}};
}

json interval_json(std::pair<int, int> iv) { return json::array({iv.first, iv.second}); }

int exit_for(Verdict v) { return v == Verdict::fail ? 1 : 0; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

void emit(const json& doc, const std::string& format) {
  if (format == "csv") {
    std::cout << "key,value\n";
    const json flat = doc.flatten();
    for (const auto& [key, value] : flat.items()) {
      std::string text = value.is_string() ? value.get<std::string>() : value.dump();
      std::cout << csv_field(key) << ',' << csv_field(text) << '\n';
    }
  } else {
    std::cout << doc.dump(2) << '\n';
  }
}

// Runs fn with S = double or S = Rational depending on the chosen backend.
template <class Fn>
int dispatch(const GlobalOptions& g, Fn fn) {
  if (g.exact()) return fn.template operator()<Rational>();
  return fn.template operator()<double>();
}

// ---------------------------------------------------------------------------
// Report serializers
// ---------------------------------------------------------------------------

template <class S>
json dominance_json(const OrientationDominanceReport<S>& report) {
  json out;
  out["lower_envelope"] = pmf_json(report.lower_envelope);
  out["upper_envelope"] = pmf_json(report.upper_envelope);
  if (report.even_pmf) out["even_count"] = pmf_json(*report.even_pmf);
  out["lower_ok"] = report.lower_ok;
  out["upper_ok"] = report.upper_ok;
  out["equal_at_half"] = report.equal_at_half;
  out["statistical"] = report.statistical;
  if (report.statistical) {
    out["samples_used"] = report.samples_used;
    out["empirical_ccdf"] = report.empirical_ccdf;
    out["band_low"] = report.band_low;
    out["band_high"] = report.band_high;
  }
  return out;
}

template <class S>
json median_bound_json(const MedianBoundReport<S>& report) {
  json out;
  out["vertex_count"] = report.vertex_count;
  out["connected"] = report.connected;
  out["pair_even_bias"] = to_double<S>(report.mean_even_bias);
  out["triple_even_bias"] = to_double<S>(report.triple_even_bias);
  out["triple_odd_bias"] = to_double<S>(report.triple_odd_bias);
  out["bias_algebra_ok"] = report.bias_algebra_ok;
  out["general_bound"] = to_double<S>(report.general_bound);
  if (report.connected_bound) out["connected_bound"] = to_double<S>(*report.connected_bound);
  out["even_median_floor"] = to_double<S>(report.even_median_floor);
  out["positive_median"] = interval_json(report.positive_median);
  out["even_median"] = interval_json(report.even_median);
  out["general_ok"] = report.general_ok;
  out["connected_ok"] = report.connected_ok;
  out["even_floor_ok"] = report.even_floor_ok;
  out["statistical"] = report.statistical;
  if (report.statistical) out["samples_used"] = report.samples_used;
  return out;
}

template <class S>
json subgraph_dominance_json(const SubgraphDominanceReport<S>& report) {
  json out;
  out["envelope"] = pmf_json(report.envelope);
  if (report.odd_count_pmf) out["odd_degree_count"] = pmf_json(*report.odd_count_pmf);
  out["dominance_ok"] = report.dominance_ok;
  out["equal_at_half"] = report.equal_at_half;
  out["statistical"] = report.statistical;
  if (report.statistical) {
    out["samples_used"] = report.samples_used;
    out["empirical_ccdf"] = report.empirical_ccdf;
    out["band_low"] = report.band_low;
    out["band_high"] = report.band_high;
  }
  return out;
}

json verify_outcome_json(const VerifyOutcome& out) {
  return {{"name", out.name},
          {"verdict", to_string(out.verdict)},
          {"checks", out.checks},
          {"detail", out.detail},
          {"wall_ms", out.wall_ms}};
}

// ---------------------------------------------------------------------------

struct PendingAction {
  std::string command;
  std::function<int(json& doc)> run;  // fills doc["config"]/doc["result"]/doc["verdict"]
};

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"exact and sampled laws of parity-locked trials on multigraphs"};
  app.require_subcommand(0, 1);

  auto globals = std::make_shared<GlobalOptions>();
  app.add_option("--backend", globals->backend, "numeric backend")
      ->check(CLI::IsMember({"float", "rational"}))
      ->capture_default_str();
  app.add_option("--tol", globals->tol, "comparison tolerance for the float backend")
      ->capture_default_str();
  app.add_option("--cap", globals->cap, "exhaustive enumeration ceiling, in bits")
      ->capture_default_str();
  app.add_option("--seed", globals->seed, "sampling seed")->capture_default_str();
  app.add_option("--samples", globals->samples, "Monte Carlo sample count")
      ->capture_default_str();
  app.add_option("--format", globals->format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--jobs", globals->jobs, "worker threads for surveys")->capture_default_str();

  PendingAction pending;

  // ----- pmf ---------------------------------------------------------------
  auto* pmf_cmd = app.add_subcommand("pmf", "laws of Bernoulli trial sums");
  pmf_cmd->require_subcommand(1);

  {
    struct Opt {
      std::vector<std::string> biases;
    };
    auto opt = std::make_shared<Opt>();
    auto* cmd = pmf_cmd->add_subcommand("poisson-binomial",
                                        "sum of independent unequal coins");
    cmd->add_option("--biases", opt->biases, "success chances, comma separated")
        ->required()
        ->delimiter(',');
    cmd->callback([&pending, opt, globals] {
      pending.command = "pmf poisson-binomial";
      pending.run = [opt, globals](json& doc) {
        return dispatch(*globals, [&]<class S>() {
          std::vector<S> params;
          for (const auto& text : opt->biases) params.push_back(parse_bias_text<S>(text));
          BiasSet<S> biases(std::move(params));
          doc["config"]["biases"] = opt->biases;
          auto split = parity_split(biases);
          doc["result"]["pmf"] = pmf_json(poisson_binomial(biases));
          doc["result"]["even_mass"] = to_double<S>(split.even);
          doc["result"]["odd_mass"] = to_double<S>(split.odd);
          return 0;
        });
      };
    });
  }

  {
    struct Opt {
      std::vector<std::string> biases;
      std::string parity;
    };
    auto opt = std::make_shared<Opt>();
    auto* cmd = pmf_cmd->add_subcommand("parity-conditioned",
                                        "trial sum conditioned on its parity");
    cmd->add_option("--biases", opt->biases, "success chances, comma separated")
        ->required()
        ->delimiter(',');
    cmd->add_option("--parity", opt->parity, "even or odd")->required();
    cmd->callback([&pending, opt, globals] {
      pending.command = "pmf parity-conditioned";
      pending.run = [opt, globals](json& doc) {
        return dispatch(*globals, [&]<class S>() {
          std::vector<S> params;
          for (const auto& text : opt->biases) params.push_back(parse_bias_text<S>(text));
          BiasSet<S> biases(std::move(params));
          doc["config"]["biases"] = opt->biases;
          doc["config"]["parity"] = opt->parity;
          doc["result"]["pmf"] = pmf_json(conditional_parity_pmf(biases, parse_parity(opt->parity)));
          return 0;
        });
      };
    });
  }

  {
    struct Opt {
      int n = 0;
      std::string p;
      std::vector<std::string> biases;
      std::vector<std::string> weights;
      std::string parity;
    };
    auto opt = std::make_shared<Opt>();
    auto* cmd = pmf_cmd->add_subcommand(
        "fixed-parity", "toss round whose outcome parity is locked in advance");
    cmd->add_option("--n", opt->n, "number of tosses (constant-bias form)");
    cmd->add_option("--p", opt->p, "shared success chance (constant-bias form)");
    cmd->add_option("--biases", opt->biases, "per-toss chances (heterogeneous form)")
        ->delimiter(',');
    cmd->add_option("--weights", opt->weights, "pick-a-coin weights (heterogeneous form)")
        ->delimiter(',');
    cmd->add_option("--parity", opt->parity, "even or odd")->required();
    cmd->callback([&pending, opt, globals] {
      pending.command = "pmf fixed-parity";
      pending.run = [opt, globals](json& doc) {
        return dispatch(*globals, [&]<class S>() {
          Parity b = parse_parity(opt->parity);
          doc["config"]["parity"] = opt->parity;
          if (!opt->biases.empty()) {
            std::vector<S> params;
            for (const auto& text : opt->biases) params.push_back(parse_bias_text<S>(text));
            BiasSet<S> biases(std::move(params));
            WeightVector<S> weights = WeightVector<S>::uniform(biases.size());
            if (!opt->weights.empty()) {
              std::vector<S> w;
              for (const auto& text : opt->weights) w.push_back(parse_scalar<S>(text));
              weights = WeightVector<S>(std::move(w));
            }
            doc["config"]["biases"] = opt->biases;
            doc["result"]["pmf"] = pmf_json(fixed_parity_toss_pmf(biases, weights, b));
            return 0;
          }
          if (opt->n < 2) throw FixparError("give either --biases or --n >= 2 with --p");
          if (opt->p.empty()) throw FixparError("--p is required with --n");
          const S p = parse_bias_text<S>(opt->p);
          doc["config"]["n"] = opt->n;
          doc["config"]["p"] = opt->p;
          doc["result"]["pmf"] = pmf_json(b == Parity::even ? even_sum_toss(opt->n, p)
                                                            : odd_sum_toss(opt->n, p));
          return 0;
        });
      };
    });
  }

  {
    struct Opt {
      std::string p1;
      int n = 0;
      std::string p;
      std::string mode = "direct";
    };
    auto opt = std::make_shared<Opt>();
    auto* cmd = pmf_cmd->add_subcommand(
        "composite", "one coin plus a parity-conditioned binomial tied to it");
    cmd->add_option("--p1", opt->p1, "bias of the leading coin, in [0,1]")->required();
    cmd->add_option("--n", opt->n, "binomial length")->required();
    cmd->add_option("--p", opt->p, "binomial bias")->required();
    cmd->add_option("--mode", opt->mode, "direct or flipped")
        ->check(CLI::IsMember({"direct", "flipped"}));
    cmd->callback([&pending, opt, globals] {
      pending.command = "pmf composite";
      pending.run = [opt, globals](json& doc) {
        return dispatch(*globals, [&]<class S>() {
          const S p1 = parse_scalar<S>(opt->p1);
          const S p = parse_bias_text<S>(opt->p);
          CompositeMode mode =
              opt->mode == "direct" ? CompositeMode::direct : CompositeMode::flipped;
          doc["config"]["p1"] = opt->p1;
          doc["config"]["n"] = opt->n;
          doc["config"]["p"] = opt->p;
          doc["config"]["mode"] = opt->mode;
          doc["result"]["pmf"] = pmf_json(composite_parity_sum(p1, opt->n, p, mode));
          return 0;
        });
      };
    });
  }

  // ----- orient ------------------------------------------------------------
  auto* orient_cmd = app.add_subcommand("orient", "random edge orientations");
  orient_cmd->require_subcommand(1);

  {
    struct Opt {
      std::string graph;
      std::string p = "0.5";
      long long rounds = 10000;
      bool tree_last = false;
    };
    auto opt = std::make_shared<Opt>();
    auto* cmd = orient_cmd->add_subcommand("sample", "draw orientations and tally stats");
    cmd->add_option("--graph", opt->graph, "graph file, or - for stdin")->required();
    cmd->add_option("--p", opt->p, "chance an edge points at its tail");
    cmd->add_option("--rounds", opt->rounds, "number of draws")->capture_default_str();
    cmd->add_flag("--tree-last", opt->tree_last,
                  "reveal edges in a spanning-tree-last order");
    cmd->callback([&pending, opt, globals] {
      pending.command = "orient sample";
      pending.run = [opt, globals](json& doc) {
        MultiGraph g = load_graph(opt->graph);
        const double p = parse_bias_text<double>(opt->p);
        doc["config"]["graph"] = graph_json(g);
        doc["config"]["p"] = opt->p;
        doc["config"]["rounds"] = opt->rounds;
        doc["config"]["tree_last"] = opt->tree_last;
        std::mt19937_64 rng(globals->seed);
        double even_sum = 0, odd_sum = 0, zero_sum = 0, positive_sum = 0;
        long long parity_violations = 0;
        for (long long round = 0; round < opt->rounds; ++round) {
          Orientation o = opt->tree_last ? sample_orientation_tree_last(g, p, rng)
                                         : sample_orientation(g, p, rng);
          auto stats = orientation_stats(g, o);
          even_sum += stats.even_count;
          odd_sum += stats.odd_count;
          zero_sum += stats.zero_count;
          positive_sum += stats.positive_count;
          if ((stats.even_count + g.edge_count() + g.vertex_count) % 2 != 0)
            ++parity_violations;
        }
        const double rounds = static_cast<double>(std::max<long long>(opt->rounds, 1));
        doc["result"]["mean_even_count"] = even_sum / rounds;
        doc["result"]["mean_odd_count"] = odd_sum / rounds;
        doc["result"]["mean_zero_count"] = zero_sum / rounds;
        doc["result"]["mean_positive_count"] = positive_sum / rounds;
        doc["result"]["parity_violations"] = parity_violations;
        return 0;
      };
    });
  }

  {
    struct Opt {
      std::string graph;
      std::string p = "0.5";
    };
    auto opt = std::make_shared<Opt>();
    auto* cmd = orient_cmd->add_subcommand("dist", "exact orientation statistics laws");
    cmd->add_option("--graph", opt->graph, "graph file, or - for stdin")->required();
    cmd->add_option("--p", opt->p, "chance an edge points at its tail");
    cmd->callback([&pending, opt, globals] {
      pending.command = "orient dist";
      pending.run = [opt, globals](json& doc) {
        return dispatch(*globals, [&]<class S>() {
          MultiGraph g = load_graph(opt->graph);
          const S p = parse_bias_text<S>(opt->p);
          doc["config"]["graph"] = graph_json(g);
          doc["config"]["p"] = opt->p;
          auto dists = orientation_distributions_by_component<S>(g, p, globals->cap);
          doc["result"]["even_count"] = pmf_json(dists.even_count);
          doc["result"]["zero_count"] = pmf_json(dists.zero_count);
          doc["result"]["positive_count"] = pmf_json(dists.positive_count);
          doc["result"]["expected_positive"] =
              to_double<S>(expectation(dists.positive_count));
          return 0;
        });
      };
    });
  }

  {
    struct Opt {
      std::string graph;
      std::string p = "0.3";
    };
    auto opt = std::make_shared<Opt>();
    auto* cmd = orient_cmd->add_subcommand(
        "dominance", "even-count law against its locked-round envelopes");
    cmd->add_option("--graph", opt->graph, "graph file, or - for stdin")->required();
    cmd->add_option("--p", opt->p, "chance an edge points at its tail, in (0, 1/2]");
    cmd->callback([&pending, opt, globals] {
      pending.command = "orient dominance";
      pending.run = [opt, globals](json& doc) {
        return dispatch(*globals, [&]<class S>() {
          MultiGraph g = load_graph(opt->graph);
          const S p = parse_bias_text<S>(opt->p);
          doc["config"]["graph"] = graph_json(g);
          doc["config"]["p"] = opt->p;
          auto report = orientation_dominance_check<S>(g, p, globals->cap,
                                                       globals->sampling(),
                                                       backend_tol<S>(*globals));
          doc["result"] = dominance_json(report);
          doc["verdict"] = to_string(report.verdict);
          return exit_for(report.verdict);
        });
      };
    });
  }

  {
    struct Opt {
      std::string graph;
      std::string p = "0.3";
    };
    auto opt = std::make_shared<Opt>();
    auto* cmd = orient_cmd->add_subcommand(
        "median-bound", "color-count medians against the rescaled-bias bounds");
    cmd->add_option("--graph", opt->graph, "graph file, or - for stdin")->required();
    cmd->add_option("--p", opt->p, "chance an edge points at its tail, in (0, 1/2]");
    cmd->callback([&pending, opt, globals] {
      pending.command = "orient median-bound";
      pending.run = [opt, globals](json& doc) {
        return dispatch(*globals, [&]<class S>() {
          MultiGraph g = load_graph(opt->graph);
          const S p = parse_bias_text<S>(opt->p);
          doc["config"]["graph"] = graph_json(g);
          doc["config"]["p"] = opt->p;
          auto report = median_bound_report<S>(g, p, globals->cap, globals->sampling(),
                                               backend_tol<S>(*globals));
          doc["result"] = median_bound_json(report);
          doc["verdict"] = to_string(report.verdict);
          return exit_for(report.verdict);
        });
      };
    });
  }

  {
    struct Opt {
      std::string graph;
    };
    auto opt = std::make_shared<Opt>();
    auto* cmd = orient_cmd->add_subcommand(
        "enumerate", "walk every orientation; census of even-vertex counts");
    cmd->add_option("--graph", opt->graph, "graph file, or - for stdin")->required();
    cmd->callback([&pending, opt, globals] {
      pending.command = "orient enumerate";
      pending.run = [opt, globals](json& doc) {
        MultiGraph g = load_graph(opt->graph);
        doc["config"]["graph"] = graph_json(g);
        auto sweep = sweep_orientation_invariants(g, globals->cap);
        auto census = even_count_orientation_census(g, globals->cap);
        doc["result"]["orientations"] = sweep.orientations;
        doc["result"]["parity_failures"] = sweep.parity_failures;
        doc["result"]["zero_floor_failures"] = sweep.zero_floor_failures;
        doc["result"]["zero_floor_tracked"] = sweep.zero_floor_tracked;
        doc["result"]["even_count_census"] = census.counts;
        doc["result"]["formula_applies"] = census.formula_applies;
        if (census.formula_applies) doc["result"]["formula_ok"] = census.formula_ok;
        bool ok = sweep.ok() && (!census.formula_applies || census.formula_ok);
        doc["verdict"] = to_string(ok ? Verdict::pass : Verdict::fail);
        return ok ? 0 : 1;
      };
    });
  }

  {
    struct Opt {
      std::string graph;
      std::vector<int> odd;
    };
    auto opt = std::make_shared<Opt>();
    auto* cmd = orient_cmd->add_subcommand(
        "t-odd", "orientation whose odd in-degree vertices are exactly the given set");
    cmd->add_option("--graph", opt->graph, "graph file, or - for stdin")->required();
    cmd->add_option("--odd", opt->odd, "target odd vertices, 1-indexed, comma separated")
        ->delimiter(',');
    cmd->callback([&pending, opt, globals] {
      pending.command = "orient t-odd";
      pending.run = [opt](json& doc) {
        MultiGraph g = load_graph(opt->graph);
        doc["config"]["graph"] = graph_json(g);
        doc["config"]["odd"] = opt->odd;
        std::vector<int> target;
        for (int v : opt->odd) {
          if (v < 1 || v > g.vertex_count)
            throw FixparError("odd vertex out of range 1.." + std::to_string(g.vertex_count));
          target.push_back(v - 1);
        }
        auto result = t_odd_orientation(g, target);
        doc["result"]["feasible"] = result.has_value();
        if (result) {
          json arrows = json::array();
          for (int e = 0; e < g.edge_count(); ++e) {
            const auto& edge = g.edges[static_cast<std::size_t>(e)];
            bool at_tail = (*result)[static_cast<std::size_t>(e)] != 0;
            int from = at_tail ? edge.head : edge.tail;
            int to = at_tail ? edge.tail : edge.head;
            arrows.push_back(json::array({from + 1, to + 1}));
          }
          doc["result"]["arrows"] = std::move(arrows);
        } else {
          doc["result"]["arrows"] = nullptr;
        }
        return 0;
      };
    });
  }

  // ----- subgraph ----------------------------------------------------------
  auto* sub_cmd = app.add_subcommand("subgraph", "random edge-keeping subgraphs");
  sub_cmd->require_subcommand(1);

  {
    struct Opt {
      std::string graph;
      std::string p = "0.5";
    };
    auto opt = std::make_shared<Opt>();
    auto* cmd = sub_cmd->add_subcommand("dist", "exact law of the odd-degree vertex count");
    cmd->add_option("--graph", opt->graph, "graph file, or - for stdin")->required();
    cmd->add_option("--p", opt->p, "chance an edge is kept");
    cmd->callback([&pending, opt, globals] {
      pending.command = "subgraph dist";
      pending.run = [opt, globals](json& doc) {
        return dispatch(*globals, [&]<class S>() {
          MultiGraph g = load_graph(opt->graph);
          const S p = parse_bias_text<S>(opt->p);
          doc["config"]["graph"] = graph_json(g);
          doc["config"]["p"] = opt->p;
          doc["result"]["odd_degree_count"] =
              pmf_json(odd_degree_pmf_by_component<S>(g, p, globals->cap));
          doc["result"]["envelope"] = pmf_json(odd_degree_envelope<S>(g, p));
          return 0;
        });
      };
    });
  }

  {
    struct Opt {
      std::string graph;
      std::string p = "0.3";
    };
    auto opt = std::make_shared<Opt>();
    auto* cmd = sub_cmd->add_subcommand(
        "dominance", "odd-degree count against its folded-bias envelope");
    cmd->add_option("--graph", opt->graph, "graph file, or - for stdin")->required();
    cmd->add_option("--p", opt->p, "chance an edge is kept");
    cmd->callback([&pending, opt, globals] {
      pending.command = "subgraph dominance";
      pending.run = [opt, globals](json& doc) {
        return dispatch(*globals, [&]<class S>() {
          MultiGraph g = load_graph(opt->graph);
          const S p = parse_bias_text<S>(opt->p);
          doc["config"]["graph"] = graph_json(g);
          doc["config"]["p"] = opt->p;
          auto report = subgraph_dominance_check<S>(g, p, globals->cap, globals->sampling(),
                                                    backend_tol<S>(*globals));
          doc["result"] = subgraph_dominance_json(report);
          doc["verdict"] = to_string(report.verdict);
          return exit_for(report.verdict);
        });
      };
    });
  }

  // ----- survey ------------------------------------------------------------
  auto* survey_cmd = app.add_subcommand("survey", "exhaustive sweeps over graph families");
  survey_cmd->require_subcommand(1);

  {
    struct Opt {
      int min_n = 2;
      int max_n = 8;
      std::uint64_t budget = 0;
    };
    auto opt = std::make_shared<Opt>();
    auto* cmd = survey_cmd->add_subcommand(
        "unimodality", "sink and independence profiles over all labeled trees");
    cmd->add_option("--min-n", opt->min_n, "smallest vertex count")->capture_default_str();
    cmd->add_option("--max-n", opt->max_n, "largest vertex count (at most 10)")
        ->capture_default_str();
    cmd->add_option("--budget", opt->budget, "stop after this many trees (0 = no limit)")
        ->capture_default_str();
    cmd->callback([&pending, opt, globals] {
      pending.command = "survey unimodality";
      pending.run = [opt, globals](json& doc) {
        TreeSurveyOptions survey;
        survey.min_vertices = opt->min_n;
        survey.max_vertices = opt->max_n;
        survey.jobs = globals->jobs;
        survey.tree_budget = opt->budget;
        doc["config"]["min_n"] = opt->min_n;
        doc["config"]["max_n"] = opt->max_n;
        doc["config"]["budget"] = opt->budget;
        auto result = survey_tree_unimodality(survey);
        doc["result"]["trees_checked"] = result.trees_checked;
        doc["result"]["sink_violations"] = result.sink_violations;
        doc["result"]["set_violations"] = result.set_violations;
        doc["result"]["complete"] = result.complete;
        doc["result"]["wall_seconds"] = result.wall_seconds;
        json examples = json::array();
        for (const auto& ex : result.examples)
          examples.push_back({{"vertex_count", ex.vertex_count},
                              {"code", ex.pruefer_code},
                              {"sink_profile_ok", ex.sink_profile_ok},
                              {"set_profile_ok", ex.set_profile_ok}});
        doc["result"]["examples"] = std::move(examples);
        Verdict v = (result.sink_violations || result.set_violations) ? Verdict::fail
                    : result.complete                                 ? Verdict::pass
                                                                      : Verdict::unverified;
        doc["verdict"] = to_string(v);
        return exit_for(v);
      };
    });
  }

  {
    struct Opt {
      int n = 5;
    };
    auto opt = std::make_shared<Opt>();
    auto* cmd = survey_cmd->add_subcommand(
        "labeled-census", "odd-degree buckets over every labeled graph on n vertices");
    cmd->add_option("--n", opt->n, "vertex count (2..7)")->capture_default_str();
    cmd->callback([&pending, opt] {
      pending.command = "survey labeled-census";
      pending.run = [opt](json& doc) {
        doc["config"]["n"] = opt->n;
        auto census = labeled_graph_census(opt->n);
        doc["result"]["by_edges_and_odd"] = census.by_edges_and_odd;
        doc["result"]["totals_by_odd"] = census.totals_by_odd;
        doc["result"]["aggregate_formula_ok"] = census.aggregate_formula_ok;
        Verdict v = census.aggregate_formula_ok ? Verdict::pass : Verdict::fail;
        doc["verdict"] = to_string(v);
        return exit_for(v);
      };
    });
  }

  // ----- verify ------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "named end-to-end self checks");
  verify_cmd->require_subcommand(1);

  {
    auto* cmd = verify_cmd->add_subcommand("list", "print the registry");
    cmd->callback([&pending] {
      pending.command = "verify list";
      pending.run = [](json& doc) {
        json rows = json::array();
        for (const auto& entry : verifier_registry())
          rows.push_back({{"name", entry.name}, {"summary", entry.summary}});
        doc["result"]["verifiers"] = std::move(rows);
        return 0;
      };
    });
  }

  {
    struct Opt {
      std::vector<std::string> names;
      std::string p = "0.3";
      int max_tree_n = 8;
    };
    auto opt = std::make_shared<Opt>();
    auto* cmd = verify_cmd->add_subcommand("lemma", "run the named checks");
    cmd->add_option("names", opt->names, "verifier names (see `verify list`)")->required();
    cmd->add_option("--p", opt->p, "bias used by graph-level checks");
    cmd->add_option("--max-tree-n", opt->max_tree_n, "tree survey depth")
        ->capture_default_str();
    cmd->callback([&pending, opt, globals] {
      pending.command = "verify lemma";
      pending.run = [opt, globals](json& doc) {
        VerifyContext ctx;
        ctx.p_text = opt->p;
        ctx.cap = globals->cap;
        ctx.tol = globals->tol;
        ctx.sampling = globals->sampling();
        ctx.max_tree_vertices = opt->max_tree_n;
        ctx.jobs = globals->jobs;
        doc["config"]["p"] = opt->p;
        json rows = json::array();
        Verdict worst = Verdict::pass;
        bool statistical = false;
        for (const auto& name : opt->names) {
          auto out = run_verifier(name, ctx);
          rows.push_back(verify_outcome_json(out));
          if (out.verdict == Verdict::fail) worst = Verdict::fail;
          if (out.verdict == Verdict::statistical_pass) statistical = true;
        }
        if (worst != Verdict::fail && statistical) worst = Verdict::statistical_pass;
        doc["result"]["outcomes"] = std::move(rows);
        doc["verdict"] = to_string(worst);
        return exit_for(worst);
      };
    });
  }

  {
    struct Opt {
      std::string p = "0.3";
      int max_tree_n = 8;
    };
    auto opt = std::make_shared<Opt>();
    auto* cmd = verify_cmd->add_subcommand("all", "run every registered check");
    cmd->add_option("--p", opt->p, "bias used by graph-level checks");
    cmd->add_option("--max-tree-n", opt->max_tree_n, "tree survey depth")
        ->capture_default_str();
    cmd->callback([&pending, opt, globals] {
      pending.command = "verify all";
      pending.run = [opt, globals](json& doc) {
        VerifyContext ctx;
        ctx.p_text = opt->p;
        ctx.cap = globals->cap;
        ctx.tol = globals->tol;
        ctx.sampling = globals->sampling();
        ctx.max_tree_vertices = opt->max_tree_n;
        ctx.jobs = globals->jobs;
        doc["config"]["p"] = opt->p;
        json rows = json::array();
        Verdict worst = Verdict::pass;
        bool statistical = false;
        for (const auto& out : run_all_verifiers(ctx)) {
          rows.push_back(verify_outcome_json(out));
          if (out.verdict == Verdict::fail) worst = Verdict::fail;
          if (out.verdict == Verdict::statistical_pass) statistical = true;
        }
        if (worst != Verdict::fail && statistical) worst = Verdict::statistical_pass;
        doc["result"]["outcomes"] = std::move(rows);
        doc["verdict"] = to_string(worst);
        return exit_for(worst);
      };
    });
  }

  // ----- parse and execute -------------------------------------------------
  // Let --backend/--tol/... be written after the subcommand as well.
  auto all = [](const CLI::App*) { return true; };
  for (auto* level_one : app.get_subcommands(all)) {
    level_one->fallthrough();
    for (auto* level_two : level_one->get_subcommands(all)) level_two->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!pending.run) {
    std::cout << app.help();
    return 2;
  }

  json doc;
  doc["command"] = pending.command;
  doc["config"] = {{"backend", globals->backend}, {"tol", globals->tol},
                   {"cap", globals->cap},         {"seed", globals->seed},
                   {"samples", globals->samples}, {"jobs", globals->jobs}};

  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    code = pending.run(doc);
  } catch (const FixparError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  doc["wall_time_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  emit(doc, globals->format);
  return code;
}

}  // namespace fixpar::cli
