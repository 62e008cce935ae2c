#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

namespace heislab {

/// Element a^n b^m c^k of the discrete Heisenberg group, stored in normal
/// form. The normal form is unique, so equality is coordinate-wise and the
/// element doubles as the lattice point (n, m, k) of the Cayley graph.
struct GroupElement {
  std::int64_t n = 0;  // exponent of a
  std::int64_t m = 0;  // exponent of b
  std::int64_t k = 0;  // exponent of the central element c = [a, b]

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

  template <typename H>
  friend H AbslHashValue(H h, const GroupElement& g) {
    return H::combine(std::move(h), g.n, g.m, g.k);
  }
};

std::ostream& operator<<(std::ostream& os, const GroupElement& g);

enum class Generator : std::uint8_t { A, B, AInv, BInv };

inline constexpr Generator kAllGenerators[] = {Generator::A, Generator::B,
                                               Generator::AInv, Generator::BInv};

constexpr Generator inverse(Generator s) {
  switch (s) {
    case Generator::A: return Generator::AInv;
    case Generator::B: return Generator::BInv;
    case Generator::AInv: return Generator::A;
    case Generator::BInv: return Generator::B;
  }
  return s;
}

/// Directed Cayley-graph edge; the label is A or B (right multiplication).
struct DirectedEdge {
  GroupElement from;
  GroupElement to;
  Generator label;

  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

inline constexpr GroupElement kIdentity{0, 0, 0};

/// The group element a generator stands for.
GroupElement element_of(Generator s);

/// Group law (n, m, k)(n', m', k') = (n + n', m + m', k + k' - m n').
/// Throws OverflowError when a coordinate leaves the int64 range.
GroupElement multiply(const GroupElement& g, const GroupElement& h);

GroupElement inverse(const GroupElement& g);

/// Right multiplication by a generator: the A step is the edge
/// (x, y, z) -> (x + 1, y, z - y), the B step is (x, y, z) -> (x, y + 1, z).
GroupElement apply_generator(const GroupElement& g, Generator s);

/// The directed edge leaving g with label A or B.
DirectedEdge out_edge(const GroupElement& g, Generator label);

/// Left-to-right product of the word, starting from the identity.
GroupElement word_eval(std::span<const Generator> word);

inline constexpr int kDefaultBallRadiusCap = 40;

/// All elements at word distance <= radius over {a, b, a^-1, b^-1}, in
/// breadth-first order (nondecreasing distance). Throws CapExceededError when
/// radius > cap.
std::vector<GroupElement> ball(int radius, int cap = kDefaultBallRadiusCap);

/// Sizes |ball(r)| for r = 0..radius from a single exploration.
std::vector<std::size_t> ball_sizes(int radius, int cap = kDefaultBallRadiusCap);

}  // namespace heislab
