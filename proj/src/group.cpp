#include "heislab/group.hpp"

#include <string>

#include <absl/container/flat_hash_set.h>

#include "heislab/errors.hpp"

namespace heislab {
namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("group coordinate overflow in addition");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("group coordinate overflow in subtraction");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("group coordinate overflow in multiplication");
  return r;
}

std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }

void check_radius(int radius, int cap) {
  if (radius < 0) throw std::invalid_argument("ball radius must be nonnegative");
  if (radius > cap)
    throw CapExceededError("ball radius " + std::to_string(radius) + " exceeds cap " +
                           std::to_string(cap));
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const GroupElement& g) {
  return os << '(' << g.n << ',' << g.m << ',' << g.k << ')';
}

GroupElement element_of(Generator s) {
  switch (s) {
    case Generator::A: return {1, 0, 0};
    case Generator::B: return {0, 1, 0};
    case Generator::AInv: return {-1, 0, 0};
    case Generator::BInv: return {0, -1, 0};
  }
  return kIdentity;
}

GroupElement multiply(const GroupElement& g, const GroupElement& h) {
  return {checked_add(g.n, h.n), checked_add(g.m, h.m),
          checked_sub(checked_add(g.k, h.k), checked_mul(g.m, h.n))};
}

GroupElement inverse(const GroupElement& g) {
  // (-n, -m, -k - n m)
  return {checked_neg(g.n), checked_neg(g.m), checked_sub(checked_neg(g.k), checked_mul(g.n, g.m))};
}

GroupElement apply_generator(const GroupElement& g, Generator s) {
  switch (s) {
    case Generator::A: return {checked_add(g.n, 1), g.m, checked_sub(g.k, g.m)};
    case Generator::B: return {g.n, checked_add(g.m, 1), g.k};
    case Generator::AInv: return {checked_sub(g.n, 1), g.m, checked_add(g.k, g.m)};
    case Generator::BInv: return {g.n, checked_sub(g.m, 1), g.k};
  }
  return g;
}

DirectedEdge out_edge(const GroupElement& g, Generator label) {
  if (label != Generator::A && label != Generator::B)
    throw std::invalid_argument("directed edges carry label A or B");
  return {g, apply_generator(g, label), label};
}

GroupElement word_eval(std::span<const Generator> word) {
  GroupElement g = kIdentity;
  for (Generator s : word) g = apply_generator(g, s);
  return g;
}

std::vector<GroupElement> ball(int radius, int cap) {
  check_radius(radius, cap);
  std::vector<GroupElement> order{kIdentity};
  absl::flat_hash_set<GroupElement> seen{kIdentity};
  std::size_t frontier_begin = 0;
  for (int r = 0; r < radius; ++r) {
    const std::size_t frontier_end = order.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (Generator s : kAllGenerators) {
        GroupElement next = apply_generator(order[i], s);
        if (seen.insert(next).second) order.push_back(next);
      }
    }
    frontier_begin = frontier_end;
  }
  return order;
}

std::vector<std::size_t> ball_sizes(int radius, int cap) {
  check_radius(radius, cap);
  std::vector<std::size_t> sizes{1};
  std::vector<GroupElement> frontier{kIdentity}, next_frontier;
  absl::flat_hash_set<GroupElement> seen{kIdentity};
  for (int r = 0; r < radius; ++r) {
    next_frontier.clear();
    for (const auto& g : frontier)
      for (Generator s : kAllGenerators) {
        GroupElement next = apply_generator(g, s);
        if (seen.insert(next).second) next_frontier.push_back(next);
      }
    frontier.swap(next_frontier);
    sizes.push_back(seen.size());
  }
  return sizes;
}

}  // namespace heislab
