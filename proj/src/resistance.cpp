#include "heislab/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>

#include "heislab/errors.hpp"
#include "heislab/parallel.hpp"

namespace heislab {

ResistanceResult solve_resistance(const ResistanceNetwork& network, std::int32_t source,
                                  std::span<const std::int32_t> sinks, const SolverOptions& options) {
  const auto n = network.vertex_count;
  if (source < 0 || static_cast<std::size_t>(source) >= n)
    throw std::out_of_range("solve_resistance: source out of range");
  // Role per vertex: 0 free, 1 source, 2 sink.
  std::vector<std::uint8_t> role(n, 0);
  for (auto s : sinks) {
    if (s < 0 || static_cast<std::size_t>(s) >= n) throw std::out_of_range("solve_resistance: sink out of range");
    if (s == source) throw std::invalid_argument("solve_resistance: source is a sink");
    role[s] = 2;
  }
  role[source] = 1;

  std::vector<std::vector<std::int32_t>> adjacency(n);
  for (const auto& [a, b] : network.edges) {
    if (a == b) continue;
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
  // Component of the source; sinks are held at potential 0.
  std::vector<std::int32_t> unknown_index(n, -1);
  std::vector<std::int32_t> unknowns;
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::int32_t> stack{source};
  seen[source] = 1;
  bool reaches_sink = false;
  std::size_t component = 1;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (auto w : adjacency[u]) {
      if (seen[w]) continue;
      seen[w] = 1;
      ++component;
      stack.push_back(w);
      if (role[w] == 2) {
        reaches_sink = true;
        continue;
      }
      unknown_index[w] = static_cast<std::int32_t>(unknowns.size());
      unknowns.push_back(w);
    }
  }
  ResistanceResult result;
  result.component_size = component;
  if (!reaches_sink) {
    result.resistance = INFINITY;
    return result;
  }
  result.connected = true;

  Eigen::VectorXd potential;
  if (!unknowns.empty()) {
    const auto m = static_cast<Eigen::Index>(unknowns.size());
    std::vector<Eigen::Triplet<double>> triplets;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto u = unknowns[i];
      triplets.emplace_back(i, i, static_cast<double>(adjacency[u].size()));
      for (auto w : adjacency[u]) {
        if (role[w] == 1) rhs[i] += 1.0;
        else if (role[w] == 0) triplets.emplace_back(i, unknown_index[w], -1.0);
      }
    }
    Eigen::SparseMatrix<double> laplacian(m, m);
    laplacian.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>>
        cg;
    cg.setTolerance(options.relative_tolerance);
    const int cap = std::max(options.minimum_iterations,
                             static_cast<int>(options.iteration_multiplier * std::sqrt(static_cast<double>(m))));
    cg.setMaxIterations(cap);
    cg.compute(laplacian);
    potential = cg.solve(rhs);
    result.iterations = static_cast<int>(cg.iterations());
    result.relative_residual = cg.error();
    if (cg.info() != Eigen::Success)
      throw SolverError("conjugate gradient did not converge in " + std::to_string(cap) +
                        " iterations (residual " + std::to_string(cg.error()) + ")");
  }
  double current = 0.0;
  for (auto w : adjacency[source]) {
    if (role[w] == 2) current += 1.0;
    else if (role[w] == 0) current += 1.0 - potential[unknown_index[w]];
  }
  result.resistance = 1.0 / current;
  return result;
}

ResistanceResult effective_resistance(const SubgraphMask& mask, const Point& source, int sink_radius,
                                      const SolverOptions& options) {
  const auto& box = *mask.box;
  if (sink_radius < 1 || sink_radius > box.radius())
    throw std::invalid_argument("effective_resistance: sink radius must lie in [1, box radius]");
  const auto src = box.index_of(source);
  if (!src || box.distance(*src) >= sink_radius)
    throw std::out_of_range("effective_resistance: source must lie strictly inside the sink shell");
  const auto members = box.vertices_within(sink_radius);
  ResistanceNetwork network;
  network.vertex_count = members;
  for (std::size_t e = 0; e < box.edges().size(); ++e) {
    const auto& edge = box.edges()[e];
    if (!mask.open[e]) continue;
    if (static_cast<std::size_t>(edge.from) >= members || static_cast<std::size_t>(edge.to) >= members)
      continue;
    network.edges.emplace_back(edge.from, edge.to);
  }
  std::vector<std::int32_t> sinks;
  for (std::size_t v = box.vertices_within(sink_radius - 1); v < members; ++v)
    sinks.push_back(static_cast<std::int32_t>(v));
  return solve_resistance(network, *src, sinks, options);
}

ResistanceProfile resistance_profile(const SubgraphMask& mask, std::span<const int> radii) {
  ResistanceProfile profile;
  int previous = 0;
  for (int r : radii) {
    if (r <= previous) throw std::invalid_argument("resistance_profile: radii must be strictly increasing and >= 1");
    if (r > mask.radius()) throw std::invalid_argument("resistance_profile: radius beyond the box");
    previous = r;
    const auto solved = effective_resistance(mask, Point{}, r);
    profile.entries.push_back({r, solved.resistance, solved.component_size, solved.connected});
  }
  return profile;
}

AveragedProfile resistance_profile(const Lattice& lattice, double p, std::span<const int> radii,
                                   std::span<const std::uint64_t> seeds, int threads) {
  if (radii.empty()) throw std::invalid_argument("resistance_profile: no radii");
  if (seeds.empty()) throw std::invalid_argument("resistance_profile: no seeds");
  const auto box = std::make_shared<const LatticeBox>(lattice, radii.back());
  AveragedProfile out;
  out.radii.assign(radii.begin(), radii.end());
  out.per_seed.resize(seeds.size());
  parallel_blocks(seeds.size(), threads, [&](std::size_t i) {
    out.per_seed[i] = resistance_profile(percolate_box(box, p, seeds[i]), radii);
  });
  for (std::size_t r = 0; r < radii.size(); ++r) {
    double sum = 0.0;
    int connected = 0;
    for (const auto& profile : out.per_seed) {
      if (!profile.entries[r].connected) continue;
      sum += profile.entries[r].effective_resistance;
      ++connected;
    }
    out.connected_seeds.push_back(connected);
    out.mean_resistance.push_back(connected > 0 ? sum / connected : INFINITY);
  }
  return out;
}

}  // namespace heislab
