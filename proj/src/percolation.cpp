#include "heislab/percolation.hpp"

#include <cmath>
#include <stdexcept>

#include "heislab/rng.hpp"

namespace heislab {

double SubgraphMask::open_fraction() const {
  if (open.empty()) return 0.0;
  std::size_t count = 0;
  for (auto flag : open) count += flag;
  return static_cast<double>(count) / static_cast<double>(open.size());
}

double edge_uniform(std::uint64_t seed, const Point& tail, int label) {
  return hash_uniform(seed, static_cast<std::uint64_t>(tail[0]), static_cast<std::uint64_t>(tail[1]),
                      static_cast<std::uint64_t>(tail[2]),
                      static_cast<std::uint64_t>(tail[3]) * 16 + static_cast<std::uint64_t>(label));
}

SubgraphMask percolate_box(std::shared_ptr<const LatticeBox> box, double p, std::uint64_t seed) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("percolation parameter p must lie in (0, 1]");
  SubgraphMask mask;
  mask.p = p;
  mask.seed = seed;
  mask.open.resize(box->edges().size());
  for (std::size_t e = 0; e < box->edges().size(); ++e) {
    const auto& edge = box->edges()[e];
    mask.open[e] = edge_uniform(seed, box->vertex(edge.from), edge.label) < p;
  }
  mask.box = std::move(box);
  return mask;
}

SubgraphMask percolate_box(const Lattice& lattice, int radius, double p, std::uint64_t seed) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("percolation parameter p must lie in (0, 1]");
  return percolate_box(std::make_shared<const LatticeBox>(lattice, radius), p, seed);
}

std::vector<Point> oriented_cluster(const SubgraphMask& mask, const Point& v) {
  const auto& box = *mask.box;
  const auto start = box.index_of(v);
  if (!start) throw std::out_of_range("oriented_cluster: vertex outside the box");
  std::vector<std::uint8_t> seen(box.vertex_count(), 0);
  std::vector<std::int32_t> stack{*start};
  seen[*start] = 1;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (int label = 0; label < box.lattice().dim; ++label) {
      const auto e = box.out_edge(u, label);
      if (e < 0 || !mask.open[e]) continue;
      const auto w = box.edges()[e].to;
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  std::vector<Point> cluster;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) cluster.push_back(box.vertex(i));
  return cluster;
}

double FlowAssignment::energy() const {
  double total = 0.0;
  for (double f : flow) total += f * f;
  return total;
}

double FlowAssignment::max_divergence_error() const {
  std::vector<double> divergence(box->vertex_count(), 0.0);
  for (std::size_t e = 0; e < flow.size(); ++e) {
    const auto& edge = box->edges()[e];
    divergence[edge.from] += flow[e];
    divergence[edge.to] -= flow[e];
  }
  double worst = 0.0;
  for (std::size_t v = 0; v < divergence.size(); ++v) {
    if (static_cast<std::int32_t>(v) == source)
      worst = std::max(worst, std::abs(divergence[v] - 1.0));
    else if (box->distance(v) < sink_radius)
      worst = std::max(worst, std::abs(divergence[v]));
  }
  return worst;
}

PathFlowResult path_flow_energy(const SubgraphMask& mask, std::uint64_t num_paths,
                                std::uint64_t path_seed) {
  const auto& box = *mask.box;
  if (box.lattice().kind == LatticeKind::Integer && box.lattice().dim < 1)
    throw std::invalid_argument("path_flow_energy: empty lattice");
  const int length = box.radius();
  const int labels = box.lattice().dim;
  std::vector<std::uint64_t> usage(box.edges().size(), 0);
  std::vector<std::int32_t> path_edges(static_cast<std::size_t>(length));
  PathFlowResult result;
  for (std::uint64_t i = 0; i < num_paths; ++i) {
    auto rng = make_stream(path_seed, StreamFamily::PathFlow, i);
    std::int32_t v = 0;
    bool open = true;
    for (int t = 0; t < length; ++t) {
      const auto e = box.out_edge(v, static_cast<int>(rng.below(static_cast<std::uint64_t>(labels))));
      if (e < 0) throw std::logic_error("oriented path left the box before the shell");
      path_edges[t] = e;
      open = open && mask.open[e];
      v = box.edges()[e].to;
    }
    if (box.distance(v) != length) throw std::logic_error("oriented path is not a geodesic");
    if (!open) continue;
    ++result.surviving;
    for (auto e : path_edges) ++usage[e];
  }
  result.flow.box = mask.box;
  result.flow.source = 0;
  result.flow.sink_radius = length;
  result.flow.flow.assign(usage.size(), 0.0);
  if (result.surviving == 0) {
    result.energy = INFINITY;
    return result;
  }
  const double share = 1.0 / static_cast<double>(result.surviving);
  for (std::size_t e = 0; e < usage.size(); ++e) result.flow.flow[e] = usage[e] * share;
  result.energy = result.flow.energy();
  return result;
}

PathFlowResult path_flow_energy(double p, std::uint64_t num_paths, int radius, std::uint64_t seed) {
  if (radius < 1) throw std::invalid_argument("path_flow_energy: radius must be >= 1");
  const auto mask = percolate_box(Lattice::heisenberg(), radius, p, seed);
  return path_flow_energy(mask, num_paths, seed);
}

}  // namespace heislab
