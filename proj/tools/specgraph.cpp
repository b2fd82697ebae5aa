#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "specgraph/specgraph.hpp"

using json = nlohmann::ordered_json;
using namespace specgraph;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitInvariant = 2;

json to_json(const Vector& v) { return std::vector<double>(v.begin(), v.end()); }

std::vector<double> column(const Vector& v) { return {v.begin(), v.end()}; }

std::vector<double> vertex_column(std::size_t n) {
  std::vector<double> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<double>(i);
  return ids;
}

// Nonzero entries as [vertex, value] pairs.
json sparse_entries(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) out.push_back({i, v[i]});
  }
  return out;
}

json members(const NodeSet& s) { return s.members(); }

json sweep_json(const SweepResult& s) {
  return {{"best_conductance", s.best_conductance},
          {"best_index", s.best_index},
          {"best_set", members(s.best_set)}};
}

LaplacianKind kind_from_name(const std::string& name) {
  if (name == "combinatorial") return LaplacianKind::kCombinatorial;
  if (name == "normalized") return LaplacianKind::kNormalizedSymmetric;
  if (name == "random-walk") return LaplacianKind::kRandomWalk;
  throw ValidationError("unknown Laplacian kind '" + name + "'");
}

NodeSet node_set(const Graph& g, const std::vector<Vertex>& nodes) {
  for (Vertex v : nodes) {
    if (v >= g.num_vertices()) throw ValidationError("seed node " + std::to_string(v) + " out of range");
  }
  return NodeSet(g.num_vertices(), nodes);
}

ClusterLabels read_truth(const std::string& path, std::size_t n) {
  const auto pairs = read_label_csv_file(path);
  ClusterLabels truth;
  truth.labels.assign(n, -1);
  for (const auto& [v, c] : pairs) {
    if (v >= n) throw ValidationError("truth vertex out of range");
    truth.labels[v] = c;
    truth.k = std::max(truth.k, c + 1);
  }
  for (int c : truth.labels) {
    if (c < 0) throw ValidationError("truth file must label every vertex");
  }
  return truth;
}

struct Common {
  std::uint64_t seed = 1;
  std::string out;
  bool string_ids = false;
};

class Command {
 public:
  Command(CLI::App& app, std::string name, std::string help, Common& common)
      : common_(common), name_(std::move(name)) {
    sub_ = app.add_subcommand(name_, std::move(help));
    sub_->add_option("--seed", common_.seed, "Seed for all randomness")->capture_default_str();
    sub_->add_option("-o,--out", common_.out, "Output path or prefix for side files");
  }
  CLI::App* app() const { return sub_; }
  const std::string& name() const { return name_; }
  std::string side_file(const std::string& suffix) const {
    return common_.out.empty() ? std::string{} : common_.out + "_" + suffix + ".csv";
  }

 private:
  Common& common_;
  std::string name_;
  CLI::App* sub_ = nullptr;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral graph methods: partitioning, diffusions, local clustering, sparsification, solvers"};
  app.require_subcommand(1);
  Common common;

  // Shared option targets. Each subcommand binds the ones it uses.
  std::string graph_path, other_path, b_path, labels_path, truth_path;
  std::string family = "path", kind = "combinatorial", method, variant = "ppr", kernel = "heat", walk = "lazy";
  std::size_t size = 8, size2 = 0, k = 2, degree = 3, samples = 0;
  std::vector<Vertex> seed_nodes;
  std::vector<Vertex> pair;
  double p = 0.5, q = 0.1, alpha = 0.15, eps = 1e-4, beta = 0.9, tau = 1e-4, kappa = 0.5;
  double t = 1.0, gamma = 0.2, hold = 0.5, solve_eps = 1e-8, sparsify_eps = 1.0, tau_rsc = -1.0;
  std::optional<double> push_rho;
  int t_max = 30, trials = 100, max_iter = 10000, num_eigs = 10;
  bool lazy = false;

  std::vector<Command> commands;
  commands.reserve(16);
  auto add = [&](std::string name, std::string help) -> CLI::App* {
    commands.emplace_back(app, std::move(name), std::move(help), common);
    return commands.back().app();
  };
  auto graph_arg = [&](CLI::App* sub) {
    sub->add_option("graph", graph_path, "Edge-list file")->required()->check(CLI::ExistingFile);
    sub->add_flag("--string-ids", common.string_ids, "Map arbitrary vertex tokens to ids");
  };

  CLI::App* gen = add("gen", "Generate a graph and write it as an edge list");
  gen->add_option("--family", family,
                  "path|cycle|grid2d|complete|star|hypercube|binary_tree|dumbbell|lollipop|gnp|regular|ring_matching|planted|sbm")
      ->capture_default_str();
  gen->add_option("--size", size, "Family size parameter, or n for random models")->capture_default_str();
  gen->add_option("--size2", size2, "Second size parameter (grid columns, lollipop tail)");
  gen->add_option("--p", p, "Edge or within-block probability")->capture_default_str();
  gen->add_option("--q", q, "Between-block probability")->capture_default_str();
  gen->add_option("--degree", degree, "Degree for regular graphs")->capture_default_str();
  gen->add_option("--k", k, "Number of blocks")->capture_default_str();

  CLI::App* eig = add("eig", "Laplacian spectrum");
  graph_arg(eig);
  eig->add_option("--kind", kind, "combinatorial|normalized|random-walk")->capture_default_str();
  eig->add_option("--count", num_eigs, "Eigenvalues echoed in JSON")->capture_default_str();

  CLI::App* part = add("partition", "Fiedler sweep cut and Cheeger report");
  graph_arg(part);

  CLI::App* ppr = add("ppr", "Dense personalized PageRank");
  graph_arg(ppr);
  ppr->add_option("--seed-node", seed_nodes, "Seed vertices (uniform over them)")->required();
  ppr->add_option("--alpha", alpha, "Teleport probability")->capture_default_str();
  ppr->add_option("--walk", walk, "lazy|plain")->capture_default_str();

  CLI::App* push = add("push", "Local push (approximate PageRank or l1-regularized)");
  graph_arg(push);
  push->add_option("--seed-node", seed_nodes, "Seed vertices")->required();
  push->add_option("--variant", variant, "ppr|l1")->capture_default_str();
  push->add_option("--alpha", alpha, "Teleport probability (ppr)")->capture_default_str();
  push->add_option("--eps", eps, "Residual threshold (ppr)")->capture_default_str();
  push->add_option("--rho", push_rho, "Push fraction (default 1/2 for ppr, 1 for l1)");
  push->add_option("--beta", beta, "Walk continuation probability (l1)")->capture_default_str();
  push->add_option("--tau", tau, "Regularization (l1)")->capture_default_str();

  CLI::App* mov = add("mov", "Locally-biased spectral vector");
  graph_arg(mov);
  mov->add_option("--seed-node", seed_nodes, "Seed set")->required();
  mov->add_option("--kappa", kappa, "Correlation target in [0, 1)")->capture_default_str();

  CLI::App* res = add("resistance", "Effective resistances");
  graph_arg(res);
  res->add_option("--pair", pair, "Two vertices")->expected(2);

  CLI::App* lev = add("leverage", "Edge leverage scores");
  graph_arg(lev);

  CLI::App* spars = add("sparsify", "Leverage-score spectral sparsifier");
  graph_arg(spars);
  spars->add_option("--samples", samples, "Number of draws (default from --eps)");
  spars->add_option("--eps", sparsify_eps, "Target accuracy for the default sample size")->capture_default_str();

  CLI::App* sim = add("similarity", "Spectral similarity of two graphs");
  graph_arg(sim);
  sim->add_option("other", other_path, "Second edge-list file")->required()->check(CLI::ExistingFile);

  CLI::App* solve = add("solve", "Laplacian linear system");
  graph_arg(solve);
  solve->add_option("--b", b_path, "Right-hand side CSV (vertex,value)")->required()->check(CLI::ExistingFile);
  solve->add_option("--method", method, "dense|cg|pcg")->capture_default_str();
  solve->add_option("--eps", solve_eps, "Relative L-norm accuracy")->capture_default_str();
  solve->add_option("--max-iter", max_iter, "Iteration cap")->capture_default_str();
  solve->add_option("--samples", samples, "Sparsifier draws for pcg (default 20 n ln n)");

  CLI::App* ssl = add("ssl", "Semi-supervised label propagation");
  graph_arg(ssl);
  ssl->add_option("--labels", labels_path, "Label CSV (vertex,class)")->required()->check(CLI::ExistingFile);
  ssl->add_option("--method", method, "joachims|zgl|zhou")->capture_default_str();
  ssl->add_option("--alpha", alpha, "Propagation weight (zhou)")->capture_default_str();

  CLI::App* rec = add("sbm-recover", "Block recovery by adjacency sign split or regularized spectral clustering");
  graph_arg(rec);
  rec->add_option("--method", method, "adjacency|rsc")->capture_default_str();
  rec->add_option("--k", k, "Number of blocks")->capture_default_str();
  rec->add_option("--tau", tau_rsc, "Regularizer (default average degree)");
  rec->add_option("--truth", truth_path, "True labels CSV (vertex,class)")->check(CLI::ExistingFile);

  CLI::App* mix = add("mixing-check", "Walk mixing against the spectral bound on a regular graph");
  graph_arg(mix);
  mix->add_option("--start", seed_nodes, "Start vertex")->expected(1);
  mix->add_option("--t-max", t_max, "Steps")->capture_default_str();
  mix->add_flag("--lazy", lazy, "Use the lazy walk");

  CLI::App* sdp = add("diffusion-sdp-check", "Diffusion kernel as a regularized SDP optimum");
  graph_arg(sdp);
  sdp->add_option("--kernel", kernel, "heat|pagerank|lazy_power")->capture_default_str();
  sdp->add_option("--t", t, "Heat time or lazy steps")->capture_default_str();
  sdp->add_option("--gamma", gamma, "PageRank teleport")->capture_default_str();
  sdp->add_option("--alpha", hold, "Lazy holding probability")->capture_default_str();
  sdp->add_option("--trials", trials, "Random feasible perturbations")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  const Command* active = nullptr;
  for (const Command& c : commands) {
    if (c.app()->parsed()) active = &c;
  }
  const CLI::App* sub = active->app();

  json params = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    const auto values = opt->results();
    params[opt->get_single_name()] = values.size() == 1 ? json(values.front()) : json(values);
  }

  json out;
  out["command"] = active->name();
  out["params"] = params;
  out["seed"] = common.seed;
  const auto start = std::chrono::steady_clock::now();

  try {
    const auto load = [&](const std::string& path) { return read_edge_list_file(path, common.string_ids).graph; };
    const std::string name = active->name();

    if (name == "gen") {
      if (common.out.empty()) throw ValidationError("gen needs -o for the edge-list file");
      Graph g = [&]() -> Graph {
        if (family == "gnp") return gen_gnp(size, p, common.seed);
        if (family == "regular") return gen_d_regular(size, degree, common.seed);
        if (family == "ring_matching") return gen_ring_plus_matching(size, common.seed);
        if (family == "planted") return gen_planted_bisection(size, p, q, common.seed).graph;
        if (family == "sbm") {
          Matrix b = Matrix::Constant(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k), q);
          b.diagonal().setConstant(p);
          return gen_sbm({static_cast<int>(k), balanced_blocks(size, static_cast<int>(k)), b}, common.seed);
        }
        return gen_family(family_from_name(family), size, size2);
      }();
      write_edge_list_file(common.out, g);
      if (!(read_edge_list_file(common.out).graph == g)) throw InvariantViolation("edge list did not round trip");
      out["vertices"] = g.num_vertices();
      out["edges"] = g.num_edges();
      out["volume"] = g.volume();
      out["file"] = common.out;
    } else if (name == "eig") {
      const Graph g = load(graph_path);
      const EigenSystem es = laplacian_eigensystem(g, kind_from_name(kind));
      const Eigen::Index shown = std::min<Eigen::Index>(num_eigs, es.size());
      out["eigenvalues"] = to_json(es.values.head(shown));
      out["lambda_max"] = es.values[es.size() - 1];
      out["residual_tol"] = es.residual_tol;
      if (const std::string f = active->side_file("eigenvalues"); !f.empty()) {
        write_csv_file(f, {"index", "eigenvalue"}, {vertex_column(g.num_vertices()), column(es.values)});
      }
    } else if (name == "partition") {
      const Graph g = load(graph_path);
      const CheegerReport c = cheeger_report(g);
      out["lambda2"] = c.lambda2;
      out["cheeger_lower"] = c.lower;
      out["cheeger_upper"] = c.upper;
      out["sweep"] = sweep_json(c.sweep);
      out["best_conductance"] = c.sweep.best_conductance;
      if (const std::string f = active->side_file("profile"); !f.empty()) {
        write_csv_file(f, {"prefix", "conductance"},
                       {vertex_column(c.sweep.profile.size() + 1), [&] {
                          std::vector<double> col{std::nan("")};
                          col.insert(col.end(), c.sweep.profile.begin(), c.sweep.profile.end());
                          return col;
                        }()});
      }
    } else if (name == "ppr") {
      const Graph g = load(graph_path);
      const NodeSet s = node_set(g, seed_nodes);
      if (walk != "lazy" && walk != "plain") throw ValidationError("walk must be lazy or plain");
      const Vector pi = pagerank_dense(g, alpha, s.indicator() / static_cast<double>(s.size()),
                                       walk == "lazy" ? kLazyStep : kPlainStep);
      out["sum"] = pi.sum();
      out["pagerank"] = to_json(pi);
      if (const std::string f = active->side_file("ppr"); !f.empty()) {
        write_csv_file(f, {"vertex", "value"}, {vertex_column(g.num_vertices()), column(pi)});
      }
    } else if (name == "push") {
      const Graph g = load(graph_path);
      const NodeSet s = node_set(g, seed_nodes);
      PushState st;
      if (variant == "ppr") {
        st = push_ppr(g, s.indicator() / static_cast<double>(s.size()), alpha, eps, push_rho.value_or(0.5));
      } else if (variant == "l1") {
        st = push_l1(g, s, beta, tau, push_rho.value_or(1.0));
        const GmOptimality o = gm_optimality_check(g, st);
        out["optimality"] = {{"ok", o.ok},
                             {"max_violation", o.max_violation},
                             {"complementarity", o.complementarity},
                             {"residual_identity", o.residual_identity}};
      } else {
        throw ValidationError("variant must be ppr or l1");
      }
      out["variant"] = variant;
      out["push_count"] = st.push_count;
      out["push_volume"] = st.push_volume;
      out["p_l1"] = st.p.lpNorm<1>();
      out["r_l1"] = st.r.lpNorm<1>();
      out["mass"] = st.p.lpNorm<1>() + st.r.lpNorm<1>();
      out["p"] = sparse_entries(st.p);
      if (st.p.any()) out["sweep"] = sweep_json(push_sweep(g, st));
      if (const std::string f = active->side_file("push"); !f.empty()) {
        write_csv_file(f, {"vertex", "p", "r"}, {vertex_column(g.num_vertices()), column(st.p), column(st.r)});
      }
    } else if (name == "mov") {
      const Graph g = load(graph_path);
      const SeedVector seed = seed_vector(g, node_set(g, seed_nodes));
      const MovSolution sol = mov_solve(g, seed, kappa);
      out["gamma"] = sol.gamma;
      out["c"] = sol.c;
      out["correlation"] = sol.correlation_achieved;
      out["constraint_inactive"] = sol.constraint_inactive;
      out["bisection_steps"] = sol.bisection_steps;
      out["residual"] = mov_residual(g, sol, seed);
      out["sweep"] = sweep_json(sweep_cut(g, sol.x));
      out["x"] = to_json(sol.x);
      if (const std::string f = active->side_file("mov"); !f.empty()) {
        write_csv_file(f, {"vertex", "x"}, {vertex_column(g.num_vertices()), column(sol.x)});
      }
    } else if (name == "resistance") {
      const Graph g = load(graph_path);
      const PinvOperator op = lap_pinv(g);
      const TotalResistance tot = total_resistance_both(g);
      out["total_pair_sum"] = tot.pair_sum;
      out["total_spectral"] = tot.spectral;
      if (!pair.empty()) {
        if (pair[0] >= g.num_vertices() || pair[1] >= g.num_vertices()) throw ValidationError("pair out of range");
        out["pair"] = pair;
        out["resistance"] = op.resistance(pair[0], pair[1]);
      }
      if (const std::string f = active->side_file("resistance"); !f.empty()) {
        const Matrix r = resistance_matrix(op);
        std::vector<std::string> header{"vertex"};
        std::vector<std::vector<double>> cols{vertex_column(g.num_vertices())};
        for (Eigen::Index j = 0; j < r.cols(); ++j) {
          header.push_back(std::to_string(j));
          cols.push_back(column(r.col(j)));
        }
        write_csv_file(f, header, cols);
      }
    } else if (name == "leverage") {
      const Graph g = load(graph_path);
      const EdgeLeverage rows = leverage_scores(g);
      double sum = 0.0, lo = 1.0, hi = 0.0;
      std::vector<std::vector<double>> cols(6);
      for (const LeverageRow& row : rows) {
        sum += row.leverage;
        lo = std::min(lo, row.leverage);
        hi = std::max(hi, row.leverage);
        cols[0].push_back(static_cast<double>(row.edge_id));
        cols[1].push_back(row.u);
        cols[2].push_back(row.v);
        cols[3].push_back(row.weight);
        cols[4].push_back(row.leverage);
        cols[5].push_back(row.probability);
      }
      out["edges"] = rows.size();
      out["leverage_sum"] = sum;
      out["min_leverage"] = lo;
      out["max_leverage"] = hi;
      if (const std::string f = active->side_file("leverage"); !f.empty()) {
        write_csv_file(f, {"edge", "u", "v", "weight", "leverage", "probability"}, cols);
      }
    } else if (name == "sparsify") {
      const Graph g = load(graph_path);
      SparsifierConfig cfg;
      cfg.samples = samples > 0 ? samples : sample_size(g.num_vertices(), sparsify_eps);
      cfg.seed = common.seed;
      const Graph h = sparsify(g, cfg);
      const SimilarityReport sim_rep = spectral_similarity(g, h, common.seed);
      out["samples"] = cfg.samples;
      out["edges_in"] = g.num_edges();
      out["edges_out"] = h.num_edges();
      out["connected"] = is_connected(h);
      out["sigma"] = std::isfinite(sim_rep.sigma) ? json(sim_rep.sigma) : json("inf");
      if (!common.out.empty()) {
        write_edge_list_file(common.out, h);
        out["file"] = common.out;
      }
    } else if (name == "similarity") {
      const Graph g = load(graph_path);
      const Graph h = load(other_path);
      const SimilarityReport r = spectral_similarity(g, h, common.seed);
      out["sigma"] = std::isfinite(r.sigma) ? json(r.sigma) : json("inf");
      out["min_quadratic_ratio"] = r.min_quadratic_ratio;
      out["max_quadratic_ratio"] = r.max_quadratic_ratio;
      out["quadratic_checks"] = r.quadratic_checks;
    } else if (name == "solve") {
      const Graph g = load(graph_path);
      const Vector b = read_vertex_csv_file(b_path, g.num_vertices());
      CgOptions opts;
      opts.eps = solve_eps;
      opts.max_iter = max_iter;
      SolveReport r;
      if (method.empty() || method == "dense") {
        r = solve_dense(g, b);
      } else if (method == "cg") {
        r = solve_cg(g, b, opts);
      } else if (method == "pcg") {
        SparsifierConfig cfg;
        cfg.samples = samples > 0 ? samples : sample_size(g.num_vertices(), 1.0);
        cfg.seed = common.seed;
        const Graph h = sparsify(g, cfg);
        if (!is_connected(h)) {
          throw DisconnectedGraph("sparsified preconditioner is disconnected; increase --samples");
        }
        out["preconditioner_edges"] = h.num_edges();
        r = solve_pcg(g, b, h, opts);
      } else {
        throw ValidationError("method must be dense, cg or pcg");
      }
      out["method"] = method.empty() ? "dense" : method;
      out["iterations"] = r.iterations;
      out["converged"] = r.converged;
      out["rel_error_L"] = r.rel_error_L;
      out["projection_removed"] = r.projection_removed;
      out["x"] = to_json(r.x);
      if (const std::string f = active->side_file("x"); !f.empty()) {
        write_csv_file(f, {"vertex", "value"}, {vertex_column(g.num_vertices()), column(r.x)});
      }
    } else if (name == "ssl") {
      const Graph g = load(graph_path);
      const auto pairs = read_label_csv_file(labels_path);
      int classes = 0;
      for (const auto& [v, c] : pairs) classes = std::max(classes, c + 1);
      const LabelSet labels = make_labels(g.num_vertices(), pairs, classes);
      SslMethod m = SslMethod::kZgl;
      if (method == "joachims") m = SslMethod::kJoachims;
      else if (method == "zhou") m = SslMethod::kZhou;
      else if (!method.empty() && method != "zgl") throw ValidationError("method must be joachims, zgl or zhou");
      const Matrix scores = ssl_scores(g, labels, m, alpha);
      const std::vector<int> pred = ssl_predict(scores);
      std::vector<int> counts(static_cast<std::size_t>(classes), 0);
      for (int c : pred) ++counts[static_cast<std::size_t>(c)];
      out["classes"] = classes;
      out["labeled"] = labels.num_labeled();
      out["class_counts"] = counts;
      out["prediction"] = pred;
      if (const std::string f = active->side_file("ssl"); !f.empty()) {
        std::vector<double> best(pred.size()), cls(pred.begin(), pred.end());
        for (std::size_t i = 0; i < pred.size(); ++i) best[i] = scores(static_cast<Eigen::Index>(i), pred[i]);
        write_csv_file(f, {"vertex", "score", "class"}, {vertex_column(g.num_vertices()), best, cls});
      }
    } else if (name == "sbm-recover") {
      const Graph g = load(graph_path);
      std::optional<ClusterLabels> truth;
      if (!truth_path.empty()) truth = read_truth(truth_path, g.num_vertices());
      ClusterLabels found;
      if (method.empty() || method == "rsc") {
        const double reg = tau_rsc >= 0.0 ? tau_rsc : g.volume() / static_cast<double>(g.num_vertices());
        const RecoveryReport r = rsc(g, static_cast<int>(k), reg, common.seed, truth);
        found = r.labels;
        out["tau"] = r.tau_used;
        out["min_degree"] = r.min_degree;
        out["xi"] = r.xi;
        out["zero_rows"] = r.zero_rows;
      } else if (method == "adjacency") {
        found = recover_bisection_adjacency(g);
      } else {
        throw ValidationError("method must be adjacency or rsc");
      }
      out["method"] = method.empty() ? "rsc" : method;
      out["labels"] = found.labels;
      if (truth) out["misclassified_fraction"] = misclassification_rate(found, *truth);
      if (const std::string f = active->side_file("labels"); !f.empty()) {
        write_csv_file(f, {"vertex", "class"},
                       {vertex_column(g.num_vertices()), std::vector<double>(found.labels.begin(), found.labels.end())});
      }
    } else if (name == "mixing-check") {
      const Graph g = load(graph_path);
      const Vertex start_vertex = seed_nodes.empty() ? 0 : seed_nodes.front();
      if (start_vertex >= g.num_vertices()) throw ValidationError("start vertex out of range");
      const MixingReport r =
          mixing_bound_check(g, Vector::Unit(static_cast<Eigen::Index>(g.num_vertices()), start_vertex), t_max, lazy);
      out["alpha"] = r.alpha;
      out["holds"] = r.holds;
      std::vector<double> ts, dist, bound;
      for (const MixingStep& s : r.steps) {
        ts.push_back(s.t);
        dist.push_back(s.l1_dist);
        bound.push_back(s.bound);
      }
      out["l1_dist"] = dist;
      out["bound"] = bound;
      if (const std::string f = active->side_file("mixing"); !f.empty()) {
        write_csv_file(f, {"t", "l1_dist", "bound"}, {ts, dist, bound});
      }
      if (!r.holds) throw InvariantViolation("mixing bound violated");
    } else if (name == "diffusion-sdp-check") {
      const Graph g = load(graph_path);
      KernelSpec spec;
      if (kernel == "heat") spec.kind = KernelKind::kHeat;
      else if (kernel == "pagerank") spec.kind = KernelKind::kPageRank;
      else if (kernel == "lazy_power") spec.kind = KernelKind::kLazyPower;
      else throw ValidationError("kernel must be heat, pagerank or lazy_power");
      spec.t = t;
      spec.gamma = gamma;
      spec.alpha = hold;
      const DensityMatrix dm = diffusion_kernel(g, spec);
      const OptimalityReport r = verify_regularized_optimum(g, dm, trials, common.seed);
      out["eta"] = dm.eta;
      out["optimal"] = r.optimal;
      out["objective"] = r.objective;
      out["margin"] = r.margin;
      out["first_order_residual"] = r.first_order_residual;
      out["trials"] = r.trials;
      if (!r.optimal) throw InvariantViolation("diffusion kernel is not the regularized optimum");
    }
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  out["wall_time"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << out.dump(2) << '\n';
  return 0;
}
