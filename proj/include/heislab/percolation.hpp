#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "heislab/lattice_box.hpp"

namespace heislab {

/// Bond percolation sample on a box. Edge e is open iff its uniform, a hash of
/// (seed, tail vertex, label), is below p; masks at different p with the
/// same seed are therefore monotonically coupled, and restricting a mask to
/// a smaller ball gives the mask that ball would have drawn.
struct SubgraphMask {
  std::shared_ptr<const LatticeBox> box;
  double p = 1.0;
  std::uint64_t seed = 0;
  std::vector<std::uint8_t> open;  // one flag per box edge

  int radius() const { return box->radius(); }
  double open_fraction() const;
};

/// Uniform attached to an edge; independent of the box it is drawn in.
double edge_uniform(std::uint64_t seed, const Point& tail, int label);

SubgraphMask percolate_box(std::shared_ptr<const LatticeBox> box, double p, std::uint64_t seed);
SubgraphMask percolate_box(const Lattice& lattice, int radius, double p, std::uint64_t seed);

/// Vertices reachable from v along open edges followed in their direction.
/// Throws std::out_of_range when v is outside the box.
std::vector<Point> oriented_cluster(const SubgraphMask& mask, const Point& v);

// ---- Effective resistance ------------------------------------------------

/// Undirected unit-resistor network; parallel edges are allowed.
struct ResistanceNetwork {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;
};

struct ResistanceResult {
  bool connected = false;  // false: no path from source to the sinks
  double resistance = 0.0;  // +inf when disconnected
  std::size_t component_size = 0;
  int iterations = 0;
  double relative_residual = 0.0;
};

struct SolverOptions {
  double relative_tolerance = 1e-8;
  /// Iteration cap is multiplier * sqrt(unknowns), at least `minimum`.
  double iteration_multiplier = 50.0;
  int minimum_iterations = 50;
};

/// Effective resistance between `source` and the set `sinks` (shorted
/// together): potential 1 at the source, 0 on the sinks, solved on the
/// source's component by diagonally preconditioned conjugate gradients.
/// Throws SolverError on non-convergence.
ResistanceResult solve_resistance(const ResistanceNetwork& network, std::int32_t source,
                                  std::span<const std::int32_t> sinks,
                                  const SolverOptions& options = {});

/// Resistance from `source` to the shell of vertices at distance
/// `sink_radius` from the origin, through open edges of the ball of that
/// radius, orientations ignored.
ResistanceResult effective_resistance(const SubgraphMask& mask, const Point& source, int sink_radius,
                                      const SolverOptions& options = {});

struct ResistanceEntry {
  int radius = 0;
  double effective_resistance = 0.0;  // +inf when the origin misses the shell
  std::size_t cluster_size = 0;
  bool connected = false;
};

struct ResistanceProfile {
  std::vector<ResistanceEntry> entries;
};

/// Origin-to-shell resistance at each radius using one mask restricted to
/// nested balls. Radii must be strictly increasing and <= mask radius.
ResistanceProfile resistance_profile(const SubgraphMask& mask, std::span<const int> radii);

struct AveragedProfile {
  std::vector<int> radii;
  std::vector<double> mean_resistance;  // over seeds whose origin reaches the shell
  std::vector<int> connected_seeds;
  std::vector<ResistanceProfile> per_seed;
};

AveragedProfile resistance_profile(const Lattice& lattice, double p, std::span<const int> radii,
                                   std::span<const std::uint64_t> seeds, int threads = 1);

// ---- Unit flows ----------------------------------------------------------

/// Flow along box edges; a negative value flows against the edge direction.
struct FlowAssignment {
  std::shared_ptr<const LatticeBox> box;
  std::vector<double> flow;
  std::int32_t source = 0;
  int sink_radius = 0;  // sinks: vertices at this distance

  double energy() const;
  /// Largest violation of conservation: |div - 1| at the source, |div| at
  /// vertices strictly inside the sink radius.
  double max_divergence_error() const;
};

struct PathFlowResult {
  double energy = 0.0;  // +inf when no path survives
  std::uint64_t surviving = 0;
  FlowAssignment flow;
};

/// Samples num_paths uniform oriented paths from the origin, keeps those whose
/// first `mask.radius()` edges are all open (oriented paths are geodesics, so
/// they hit the shell exactly then), and returns the energy of the average of
/// their unit flows.
PathFlowResult path_flow_energy(const SubgraphMask& mask, std::uint64_t num_paths,
                                std::uint64_t path_seed);

/// Heisenberg box of radius R percolated with (p, seed), then path_flow_energy.
PathFlowResult path_flow_energy(double p, std::uint64_t num_paths, int radius, std::uint64_t seed);

}  // namespace heislab
