#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <tuple>

#include "specgraph/specgraph.hpp"

namespace py = pybind11;
using namespace specgraph;

namespace {

using EdgeTuple = std::tuple<Vertex, Vertex, double>;

Graph make_graph(std::size_t n, const std::vector<EdgeTuple>& edges) {
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (const auto& [u, v, w] : edges) out.push_back({u, v, w});
  return Graph(n, std::move(out));
}

std::vector<EdgeTuple> edge_tuples(const Graph& g) {
  std::vector<EdgeTuple> out;
  for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v, e.w);
  return out;
}

NodeSet node_set(const Graph& g, const std::vector<Vertex>& nodes) { return NodeSet(g.num_vertices(), nodes); }

py::dict sweep_dict(const SweepResult& s) {
  py::dict d;
  d["order"] = s.order;
  d["best_index"] = s.best_index;
  d["best_set"] = s.best_set.members();
  d["best_conductance"] = s.best_conductance;
  d["profile"] = s.profile;
  return d;
}

py::dict solve_dict(const SolveReport& r) {
  py::dict d;
  d["x"] = r.x;
  d["iterations"] = r.iterations;
  d["converged"] = r.converged;
  d["rel_error_L"] = r.rel_error_L;
  d["error_history"] = r.error_history;
  return d;
}

LabelSet labels_from(const Graph& g, const std::vector<std::pair<Vertex, int>>& labeled) {
  int classes = 0;
  for (const auto& [v, c] : labeled) classes = std::max(classes, c + 1);
  return make_labels(g.num_vertices(), labeled, classes);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral graph methods";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  py::enum_<LaplacianKind>(m, "LaplacianKind")
      .value("combinatorial", LaplacianKind::kCombinatorial)
      .value("normalized", LaplacianKind::kNormalizedSymmetric)
      .value("random_walk", LaplacianKind::kRandomWalk);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("edges"))
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("volume", &Graph::volume)
      .def_property_readonly("degrees", [](const Graph& g) { return Vector(g.degrees()); })
      .def("edges", &edge_tuples)
      .def("weight", &Graph::weight)
      .def("adjacency", &Graph::adjacency_matrix)
      .def("laplacian", [](const Graph& g, LaplacianKind k) { return laplacian(g, k); },
           py::arg("kind") = LaplacianKind::kCombinatorial)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.num_vertices()) + ", m=" + std::to_string(g.num_edges()) + ")";
      });

  m.def("read_edge_list", [](const std::string& path) { return read_edge_list_file(path).graph; });
  m.def("write_edge_list", &write_edge_list_file);

  m.def("family", [](const std::string& name, std::size_t size, std::size_t size2) {
    return gen_family(family_from_name(name), size, size2);
  }, py::arg("name"), py::arg("size"), py::arg("size2") = 0);
  m.def("gnp", &gen_gnp, py::arg("n"), py::arg("p"), py::arg("seed") = 1);
  m.def("random_regular", &gen_d_regular, py::arg("n"), py::arg("d"), py::arg("seed") = 1);
  m.def("planted_bisection", [](std::size_t n, double p, double q, std::uint64_t seed) {
    PlantedBisection pb = gen_planted_bisection(n, p, q, seed);
    return py::make_tuple(pb.graph, pb.truth.labels);
  }, py::arg("n"), py::arg("p"), py::arg("q"), py::arg("seed") = 1);

  m.def("partition_quality", [](const Graph& g, const std::vector<Vertex>& s) {
    const PartitionScore q = partition_quality(g, node_set(g, s));
    py::dict d;
    d["cut"] = q.cut;
    d["expansion"] = q.expansion_h;
    d["sparsity"] = q.sparsity;
    d["conductance"] = q.conductance_phi;
    d["ncut"] = q.ncut;
    return d;
  });
  m.def("eigensystem", [](const Graph& g, LaplacianKind k) {
    const EigenSystem es = laplacian_eigensystem(g, k);
    return py::make_tuple(es.values, es.vectors);
  }, py::arg("g"), py::arg("kind") = LaplacianKind::kCombinatorial);
  m.def("fiedler", [](const Graph& g, LaplacianKind k) {
    const FiedlerResult f = fiedler(g, k);
    return py::make_tuple(f.lambda2, f.vector);
  }, py::arg("g"), py::arg("kind") = LaplacianKind::kCombinatorial);
  m.def("sweep_cut", [](const Graph& g, const Vector& x) { return sweep_dict(sweep_cut(g, x)); });
  m.def("cheeger", [](const Graph& g) {
    const CheegerReport c = cheeger_report(g);
    py::dict d;
    d["lambda2"] = c.lambda2;
    d["sweep_conductance"] = c.sweep_phi;
    d["lower"] = c.lower;
    d["upper"] = c.upper;
    return d;
  });
  m.def("spectral_cluster", [](const Graph& g, int k, std::uint64_t seed) {
    return spectral_cluster(g, k, ClusterVariant::kNormalizedRowNorm, seed).labels;
  }, py::arg("g"), py::arg("k"), py::arg("seed") = 1);

  m.def("pagerank", [](const Graph& g, double alpha, const Vector& s, bool lazy) {
    return pagerank_dense(g, alpha, s, lazy ? kLazyStep : kPlainStep);
  }, py::arg("g"), py::arg("alpha"), py::arg("s"), py::arg("lazy") = true);
  m.def("heat_kernel", &heat_kernel);

  m.def("push_ppr", [](const Graph& g, const Vector& seed, double alpha, double eps, double rho) {
    const PushState st = push_ppr(g, seed, alpha, eps, rho);
    return py::make_tuple(st.p, st.r, st.push_count);
  }, py::arg("g"), py::arg("seed"), py::arg("alpha"), py::arg("eps"), py::arg("rho") = 0.5);
  m.def("push_l1", [](const Graph& g, const std::vector<Vertex>& s, double beta, double tau, double rho) {
    const PushState st = push_l1(g, node_set(g, s), beta, tau, rho);
    return py::make_tuple(st.p, st.r, gm_optimality_check(g, st).ok);
  }, py::arg("g"), py::arg("seed_set"), py::arg("beta"), py::arg("tau"), py::arg("rho") = 1.0);
  m.def("mov", [](const Graph& g, const std::vector<Vertex>& s, double kappa) {
    const MovSolution sol = mov_solve(g, seed_vector(g, node_set(g, s)), kappa);
    py::dict d;
    d["x"] = sol.x;
    d["gamma"] = sol.gamma;
    d["correlation"] = sol.correlation_achieved;
    d["constraint_inactive"] = sol.constraint_inactive;
    return d;
  });

  m.def("effective_resistance", &effective_resistance);
  m.def("total_resistance", &total_resistance);
  m.def("leverage_scores", [](const Graph& g) {
    std::vector<double> out;
    for (const LeverageRow& row : leverage_scores(g)) out.push_back(row.leverage);
    return out;
  });
  m.def("sparsify", [](const Graph& g, std::size_t samples, std::uint64_t seed) {
    SparsifierConfig cfg;
    cfg.samples = samples;
    cfg.seed = seed;
    return sparsify(g, cfg);
  }, py::arg("g"), py::arg("samples"), py::arg("seed") = 1);
  m.def("sample_size", [](std::size_t n, double eps) { return sample_size(n, eps); });
  m.def("spectral_similarity", [](const Graph& g, const Graph& h) { return spectral_similarity(g, h).sigma; });

  m.def("solve", [](const Graph& g, const Vector& b, const std::string& method, double eps) {
    CgOptions opts;
    opts.eps = eps;
    if (method == "dense") return solve_dict(solve_dense(g, b));
    if (method == "cg") return solve_dict(solve_cg(g, b, opts));
    throw ValidationError("method must be dense or cg; use solve_pcg for preconditioning");
  }, py::arg("g"), py::arg("b"), py::arg("method") = "cg", py::arg("eps") = 1e-8);
  m.def("solve_pcg", [](const Graph& g, const Vector& b, const Graph& precond, double eps) {
    CgOptions opts;
    opts.eps = eps;
    return solve_dict(solve_pcg(g, b, precond, opts));
  }, py::arg("g"), py::arg("b"), py::arg("precond"), py::arg("eps") = 1e-8);

  m.def("ssl", [](const Graph& g, const std::vector<std::pair<Vertex, int>>& labeled, const std::string& method,
                  double alpha) {
    SslMethod sm = SslMethod::kZgl;
    if (method == "joachims") sm = SslMethod::kJoachims;
    else if (method == "zhou") sm = SslMethod::kZhou;
    else if (method != "zgl") throw ValidationError("method must be joachims, zgl or zhou");
    const Matrix scores = ssl_scores(g, labels_from(g, labeled), sm, alpha);
    return py::make_tuple(scores, ssl_predict(scores));
  }, py::arg("g"), py::arg("labeled"), py::arg("method") = "zgl", py::arg("alpha") = 0.9);

  m.def("recover_bisection", [](const Graph& g) { return recover_bisection_adjacency(g).labels; });
  m.def("rsc", [](const Graph& g, int k, double tau, std::uint64_t seed) {
    return rsc(g, k, tau, seed).labels.labels;
  }, py::arg("g"), py::arg("k"), py::arg("tau"), py::arg("seed") = 1);
  m.def("misclassification_rate", [](const std::vector<int>& found, const std::vector<int>& truth) {
    const int k = 1 + std::max(*std::max_element(found.begin(), found.end()), *std::max_element(truth.begin(), truth.end()));
    return misclassification_rate({found, k}, {truth, k});
  });
}
