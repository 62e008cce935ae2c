#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "heislab/group.hpp"

namespace heislab {

enum class LatticeKind { Heisenberg, Integer };

/// Cayley graph used for percolation: the Heisenberg group with generators
/// a, b (directed labels 0, 1), or Z^d with the standard basis (labels 0..d-1).
struct Lattice {
  LatticeKind kind = LatticeKind::Heisenberg;
  int dim = 2;  // number of directed generators

  static Lattice heisenberg() { return {LatticeKind::Heisenberg, 2}; }
  static Lattice integer(int d);
  std::string name() const;
  friend bool operator==(const Lattice&, const Lattice&) = default;
};

using Point = std::array<std::int64_t, 4>;

inline Point to_point(const GroupElement& g) { return {g.n, g.m, g.k, 0}; }
inline GroupElement to_element(const Point& p) { return {p[0], p[1], p[2]}; }

/// Neighbour of p along generator `label`, forwards or backwards.
Point lattice_step(const Lattice& lattice, const Point& p, int label, bool forward);

/// Ball of the given radius around the origin (undirected word metric) with
/// its directed edges. Vertices are stored in breadth-first order, so the ball
/// of any smaller radius is a prefix and its edges are the edges between
/// prefix members.
class LatticeBox {
 public:
  struct Edge {
    std::int32_t from;
    std::int32_t to;
    std::uint8_t label;
  };

  LatticeBox(Lattice lattice, int radius, int cap = kDefaultBallRadiusCap);

  const Lattice& lattice() const { return lattice_; }
  int radius() const { return radius_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const Point& vertex(std::size_t i) const { return vertices_[i]; }
  int distance(std::size_t i) const { return distance_[i]; }
  std::optional<std::int32_t> index_of(const Point& p) const;
  /// Number of vertices at distance <= r.
  std::size_t vertices_within(int r) const;

  const std::vector<Edge>& edges() const { return edges_; }
  /// Index of the edge leaving vertex v with the given label, or -1 if its
  /// head lies outside the box.
  std::int32_t out_edge(std::int32_t v, int label) const {
    return out_edges_[static_cast<std::size_t>(v) * lattice_.dim + label];
  }

 private:
  Lattice lattice_;
  int radius_;
  std::vector<Point> vertices_;
  std::vector<int> distance_;
  std::vector<std::size_t> layer_end_;
  absl::flat_hash_map<Point, std::int32_t> index_;
  std::vector<Edge> edges_;
  std::vector<std::int32_t> out_edges_;
};

}  // namespace heislab
