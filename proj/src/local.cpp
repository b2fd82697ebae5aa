#include "specgraph/local.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include <Eigen/Cholesky>

#include "specgraph/errors.hpp"

namespace specgraph {

namespace {

void require_positive_degrees(const Graph& g) {
  if (g.has_isolated_vertex()) throw DegenerateDegree("local methods need positive degrees");
}

// FIFO work queue with an in-queue mark so each vertex appears at most once.
class VertexQueue {
 public:
  explicit VertexQueue(std::size_t n) : queued_(n, false) {}
  void push(Vertex v) {
    if (!queued_[v]) {
      queued_[v] = true;
      q_.push_back(v);
    }
  }
  bool empty() const { return q_.empty(); }
  Vertex pop() {
    const Vertex v = q_.front();
    q_.pop_front();
    queued_[v] = false;
    return v;
  }

 private:
  std::vector<bool> queued_;
  std::deque<Vertex> q_;
};

}  // namespace

// --- seed vectors ----------------------------------------------------------

SeedVector seed_vector(const Graph& g, const NodeSet& t) {
  if (t.universe() != g.num_vertices()) throw ValidationError("seed set universe mismatch");
  if (!t.proper()) throw ValidationError("seed set must be a proper nonempty subset");
  const double vol_t = t.volume(g);
  const double vol_tbar = g.volume() - vol_t;
  if (vol_t <= 0.0 || vol_tbar <= 0.0) throw DegenerateDegree("seed set and complement need positive volume");
  const double scale = std::sqrt(vol_t * vol_tbar / g.volume());
  Vector s(static_cast<Eigen::Index>(g.num_vertices()));
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    s[i] = t.contains(static_cast<Vertex>(i)) ? scale / vol_t : -scale / vol_tbar;
  }
  return {std::move(s), t};
}

SeedVector seed_from_vector(const Graph& g, const Vector& s) {
  const Vector& d = g.degrees();
  Vector out = s.array() - s.dot(d) / g.volume();
  const double norm = std::sqrt(out.dot(d.cwiseProduct(out)));
  if (norm <= 0.0) throw ValidationError("seed vector lies in the span of the constant vector");
  return {out / norm, std::nullopt};
}

double seed_correlation(const Graph& g, const Vector& a, const Vector& b) {
  const double c = a.dot(g.degrees().cwiseProduct(b));
  return c * c;
}

// --- push ------------------------------------------------------------------

PushState push_ppr(const Graph& g, const Vector& seed, double alpha, double eps, double rho,
                   const PushObserver& observer) {
  require_positive_degrees(g);
  const std::size_t n = g.num_vertices();
  if (seed.size() != static_cast<Eigen::Index>(n)) throw ValidationError("seed has wrong length");
  if (seed.minCoeff() < 0.0 || seed.sum() > 1.0 + 1e-12) {
    throw ValidationError("push seed must be nonnegative with total mass at most 1");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("push needs alpha in (0, 1)");
  if (!(eps > 0.0)) throw ValidationError("push needs eps > 0");
  if (!(rho > 0.0 && rho <= 1.0)) throw ValidationError("push needs rho in (0, 1]");

  PushState st;
  st.variant = PushVariant::kLazyPpr;
  st.p = Vector::Zero(seed.size());
  st.r = seed;
  st.seed = seed;
  st.alpha = alpha;
  st.eps = eps;
  st.rho = rho;

  auto over = [&](Vertex u) { return st.r[u] >= eps * g.degree(u); };
  VertexQueue queue(n);
  for (std::size_t u = 0; u < n; ++u) {
    if (over(static_cast<Vertex>(u))) queue.push(static_cast<Vertex>(u));
  }
  while (!queue.empty()) {
    const Vertex u = queue.pop();
    if (!over(u)) continue;
    if (st.push_count >= kMaxPushes) throw InvariantViolation("push exceeded its work cap");
    const double ru = st.r[u];
    const double du = g.degree(u);
    st.p[u] += alpha * ru;
    st.r[u] = (1.0 - alpha) * (1.0 - rho) * ru;
    const double spread = (1.0 - alpha) * rho * ru / du;
    for (const Neighbor& nb : g.neighbors(u)) {
      st.r[nb.vertex] += spread * nb.weight;
      if (over(nb.vertex)) queue.push(nb.vertex);
    }
    if (over(u)) queue.push(u);
    ++st.push_count;
    st.push_volume += du;
    if (observer) observer(st);
  }
  return st;
}

SweepResult push_sweep(const Graph& g, const PushState& st) {
  const std::size_t n = g.num_vertices();
  std::vector<Vertex> support;
  for (std::size_t v = 0; v < n; ++v) {
    if (st.p[static_cast<Eigen::Index>(v)] > 0.0) support.push_back(static_cast<Vertex>(v));
  }
  if (support.empty()) throw ValidationError("push sweep needs a nonzero approximation vector");
  auto q = [&](Vertex v) { return st.p[v] / g.degree(v); };
  std::stable_sort(support.begin(), support.end(), [&](Vertex a, Vertex b) { return q(a) > q(b); });

  SweepResult r;
  r.order = support;
  const double total = g.volume();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<bool> in_prefix(n, false);
  double cut = 0.0, vol = 0.0;
  const std::size_t len = std::min(support.size(), n - 1);
  for (std::size_t i = 0; i < len; ++i) {
    const Vertex v = support[i];
    double inside = 0.0;
    for (const Neighbor& nb : g.neighbors(v)) {
      if (in_prefix[nb.vertex]) inside += nb.weight;
    }
    in_prefix[v] = true;
    cut += g.degree(v) - 2.0 * inside;
    vol += g.degree(v);
    const double denom = std::min(vol, total - vol);
    r.profile.push_back(denom > 0.0 ? std::max(cut, 0.0) / denom : inf);
  }
  if (r.profile.empty()) throw ValidationError("push sweep needs at least two vertices");
  const auto best = static_cast<std::size_t>(
      std::min_element(r.profile.begin(), r.profile.end()) - r.profile.begin());
  r.best_index = best + 1;
  r.best_conductance = r.profile[best];
  NodeSet s(n, std::span<const Vertex>(support.data(), r.best_index));
  r.best_set = s.volume(g) <= total - s.volume(g) ? s : s.complement();
  return r;
}

PushState push_l1(const Graph& g, const NodeSet& seed_set, double beta, double tau, double rho,
                  const PushObserver& observer) {
  require_positive_degrees(g);
  const std::size_t n = g.num_vertices();
  if (seed_set.universe() != n || seed_set.empty()) throw ValidationError("push_l1 needs a nonempty seed set");
  if (!(beta > 0.0 && beta < 1.0)) throw ValidationError("push_l1 needs beta in (0, 1)");
  if (!(tau > 0.0)) throw ValidationError("push_l1 needs tau > 0");
  if (!(rho > 0.0 && rho <= 1.0)) throw ValidationError("push_l1 needs rho in (0, 1]");

  PushState st;
  st.variant = PushVariant::kL1;
  st.seed = seed_set.indicator().cwiseProduct(g.degrees()) / seed_set.volume(g);
  st.p = Vector::Zero(static_cast<Eigen::Index>(n));
  st.r = (1.0 - beta) * st.seed;
  st.alpha = beta;
  st.eps = tau;
  st.rho = rho;

  // With rho = 1 the excess over tau d_j only vanishes in the limit, so
  // excesses below roundoff scale are not pushed.
  auto over = [&](Vertex j) { return st.r[j] - tau * g.degree(j) > kL1ExcessTol * tau * g.degree(j); };
  VertexQueue queue(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (over(static_cast<Vertex>(j))) queue.push(static_cast<Vertex>(j));
  }
  while (!queue.empty()) {
    const Vertex j = queue.pop();
    if (!over(j)) continue;
    if (st.push_count >= kMaxPushes) throw InvariantViolation("push_l1 exceeded its work cap");
    const double dj = g.degree(j);
    const double keep = tau * dj * rho;
    const double m = st.r[j] - keep;
    st.p[j] += m;
    st.r[j] = keep;
    for (const Neighbor& nb : g.neighbors(j)) {
      st.r[nb.vertex] += beta * m * nb.weight / dj;
      if (over(nb.vertex)) queue.push(nb.vertex);
    }
    ++st.push_count;
    st.push_volume += dj;
    if (observer) observer(st);
  }
  return st;
}

double push_l1_identity_residual(const Graph& g, const PushState& st) {
  const Vector walk = g.apply_adjacency(st.p.cwiseQuotient(g.degrees()));
  const Vector expected = (1.0 - st.alpha) * st.seed - (st.p - st.alpha * walk);
  return (st.r - expected).lpNorm<Eigen::Infinity>();
}

GmOptimality gm_optimality_check(const Graph& g, const PushState& st) {
  if (st.variant != PushVariant::kL1) throw ValidationError("optimality check applies to push_l1 output");
  GmOptimality o;
  const Vector tau_d = st.eps * g.degrees();
  for (Eigen::Index i = 0; i < st.p.size(); ++i) {
    o.x_negativity = std::max(o.x_negativity, -st.p[i]);
    o.r_bounds = std::max({o.r_bounds, -st.r[i], st.r[i] - tau_d[i]});
  }
  o.complementarity = std::abs(st.p.dot(tau_d - st.r));
  o.residual_identity = push_l1_identity_residual(g, st);
  o.max_violation = std::max({o.x_negativity, o.r_bounds, o.complementarity, o.residual_identity});
  o.ok = o.max_violation <= kGmTol;
  return o;
}

// --- localized cut graph ----------------------------------------------------

LocalizedCutGraph localized_cut_graph(const Graph& g, const NodeSet& s, double alpha) {
  const std::size_t n = g.num_vertices();
  if (s.universe() != n || !s.proper()) throw ValidationError("localized cut graph needs a proper subset");
  if (!(alpha >= 0.0)) throw ValidationError("localized cut graph needs alpha >= 0");
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  const auto s_node = static_cast<Vertex>(n);
  const auto t_node = static_cast<Vertex>(n + 1);
  if (alpha > 0.0) {
    for (std::size_t v = 0; v < n; ++v) {
      const auto vv = static_cast<Vertex>(v);
      if (g.degree(vv) <= 0.0) continue;
      edges.push_back({s.contains(vv) ? s_node : t_node, vv, alpha * g.degree(vv)});
    }
  }
  return {Graph(n + 2, std::move(edges)), s_node, t_node, alpha, s};
}

PrCutEquivalence pr_cut_equivalence_check(const Graph& g, const NodeSet& s, double alpha) {
  if (!(alpha > 0.0)) throw ValidationError("PageRank/cut equivalence needs alpha > 0");
  require_positive_degrees(g);
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  const Vector& d = g.degrees();
  const double vol_s = s.volume(g);

  PrCutEquivalence r;
  // PageRank side.
  Matrix pr_system = laplacian(g);
  pr_system.diagonal() += alpha * d;
  const Vector v = s.indicator().cwiseProduct(d) / vol_s;
  r.pagerank_z = pr_system.llt().solve(alpha * v);

  // Cut side: minimize x^T L_cut x with x_s = 1, x_t = 0 over the free block.
  const LocalizedCutGraph cut = localized_cut_graph(g, s, alpha);
  const Matrix l_cut = laplacian(cut.graph);
  const Matrix l_free = l_cut.topLeftCorner(n, n);
  const Vector rhs = -l_cut.block(0, cut.s_node, n, 1);
  r.cut_x = l_free.ldlt().solve(rhs);

  r.max_diff = (r.cut_x - vol_s * r.pagerank_z).lpNorm<Eigen::Infinity>();
  r.ok = r.max_diff <= kPrCutTol;
  return r;
}

}  // namespace specgraph
