#include "heislab/lattice_box.hpp"

#include <stdexcept>

#include "heislab/errors.hpp"

namespace heislab {

Lattice Lattice::integer(int d) {
  if (d < 1 || d > 4) throw std::invalid_argument("integer lattice dimension must be 1..4");
  return {LatticeKind::Integer, d};
}

std::string Lattice::name() const {
  return kind == LatticeKind::Heisenberg ? "heisenberg" : "z" + std::to_string(dim);
}

Point lattice_step(const Lattice& lattice, const Point& p, int label, bool forward) {
  if (label < 0 || label >= lattice.dim) throw std::invalid_argument("generator label out of range");
  if (lattice.kind == LatticeKind::Heisenberg) {
    const Generator s = label == 0 ? (forward ? Generator::A : Generator::AInv)
                                   : (forward ? Generator::B : Generator::BInv);
    return to_point(apply_generator(to_element(p), s));
  }
  Point q = p;
  q[label] += forward ? 1 : -1;
  return q;
}

LatticeBox::LatticeBox(Lattice lattice, int radius, int cap) : lattice_(lattice), radius_(radius) {
  if (radius < 0) throw std::invalid_argument("box radius must be nonnegative");
  if (radius > cap)
    throw CapExceededError("box radius " + std::to_string(radius) + " exceeds cap " +
                           std::to_string(cap));
  vertices_.push_back(Point{});
  distance_.push_back(0);
  index_.emplace(Point{}, 0);
  layer_end_.push_back(1);
  std::size_t begin = 0;
  for (int r = 1; r <= radius; ++r) {
    const std::size_t end = vertices_.size();
    for (std::size_t i = begin; i < end; ++i)
      for (int label = 0; label < lattice.dim; ++label)
        for (bool forward : {true, false}) {
          const Point q = lattice_step(lattice, vertices_[i], label, forward);
          if (index_.emplace(q, static_cast<std::int32_t>(vertices_.size())).second) {
            vertices_.push_back(q);
            distance_.push_back(r);
          }
        }
    layer_end_.push_back(vertices_.size());
    begin = end;
  }
  out_edges_.assign(vertices_.size() * lattice.dim, -1);
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    for (int label = 0; label < lattice.dim; ++label) {
      auto it = index_.find(lattice_step(lattice, vertices_[v], label, true));
      if (it == index_.end()) continue;
      out_edges_[v * lattice.dim + label] = static_cast<std::int32_t>(edges_.size());
      edges_.push_back({static_cast<std::int32_t>(v), it->second, static_cast<std::uint8_t>(label)});
    }
}

std::optional<std::int32_t> LatticeBox::index_of(const Point& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t LatticeBox::vertices_within(int r) const {
  if (r < 0) return 0;
  if (r >= radius_) return vertices_.size();
  return layer_end_[static_cast<std::size_t>(r)];
}

}  // namespace heislab
