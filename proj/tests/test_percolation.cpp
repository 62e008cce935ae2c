#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <memory>
#include <set>
#include <vector>

#include "heislab/errors.hpp"
#include "heislab/fit.hpp"
#include "heislab/percolation.hpp"

using namespace heislab;

namespace {

const Point kOrigin{0, 0, 0, 0};

std::shared_ptr<const LatticeBox> heis_box(int radius) {
  return std::make_shared<const LatticeBox>(Lattice::heisenberg(), radius);
}

SubgraphMask closed_mask(std::shared_ptr<const LatticeBox> box) {
  SubgraphMask mask = percolate_box(box, 1.0, 0);
  std::fill(mask.open.begin(), mask.open.end(), 0);
  return mask;
}

void open_edge(SubgraphMask& mask, const GroupElement& tail, int label) {
  const auto v = mask.box->index_of(to_point(tail));
  REQUIRE(v.has_value());
  const auto e = mask.box->out_edge(*v, label);
  REQUIRE(e >= 0);
  mask.open[e] = 1;
}

double resistance(std::size_t vertices, std::vector<std::pair<std::int32_t, std::int32_t>> edges,
                  std::int32_t source, std::vector<std::int32_t> sinks) {
  return solve_resistance({vertices, std::move(edges)}, source, sinks).resistance;
}

}  // namespace

TEST_CASE("percolate_box basics") {
  const auto full = percolate_box(Lattice::heisenberg(), 6, 1.0, 3);
  CHECK(std::all_of(full.open.begin(), full.open.end(), [](auto f) { return f == 1; }));
  CHECK(full.open_fraction() == 1.0);

  const auto half = percolate_box(Lattice::heisenberg(), 20, 0.5, 8);
  REQUIRE(half.open.size() >= 100000);
  CHECK(std::abs(half.open_fraction() - 0.5) <= 0.01);

  const auto again = percolate_box(Lattice::heisenberg(), 20, 0.5, 8);
  CHECK(again.open == half.open);
  const auto other = percolate_box(Lattice::heisenberg(), 20, 0.5, 9);
  CHECK(other.open != half.open);

  CHECK_THROWS_AS(percolate_box(Lattice::heisenberg(), 4, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(percolate_box(Lattice::heisenberg(), 4, 1.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(percolate_box(Lattice::heisenberg(), 41, 0.5, 1), CapExceededError);
}

TEST_CASE("masks are coupled across p and nested across radii") {
  const auto box = heis_box(10);
  const auto low = percolate_box(box, 0.4, 77);
  const auto high = percolate_box(box, 0.7, 77);
  for (std::size_t e = 0; e < low.open.size(); ++e) REQUIRE((!low.open[e] || high.open[e]));

  const auto small = percolate_box(Lattice::heisenberg(), 6, 0.4, 77);
  for (std::size_t e = 0; e < small.open.size(); ++e) {
    const auto& edge = small.box->edges()[e];
    const Point& tail = small.box->vertex(edge.from);
    const auto v = box->index_of(tail);
    REQUIRE(v.has_value());
    REQUIRE(low.open[box->out_edge(*v, edge.label)] == small.open[e]);
    REQUIRE(small.open[e] == (edge_uniform(77, tail, edge.label) < 0.4));
  }
}

TEST_CASE("Z^d boxes") {
  const LatticeBox square(Lattice::integer(2), 3);
  CHECK(square.vertex_count() == 25);  // 2 r^2 + 2 r + 1
  CHECK(square.vertices_within(1) == 5);
  const LatticeBox line(Lattice::integer(1), 5);
  CHECK(line.vertex_count() == 11);
  CHECK(line.edges().size() == 10);
  CHECK_THROWS_AS(Lattice::integer(5), std::invalid_argument);
}

TEST_CASE("oriented clusters") {
  const auto box = heis_box(4);
  auto mask = closed_mask(box);
  CHECK(oriented_cluster(mask, kOrigin) == std::vector<Point>{kOrigin});

  open_edge(mask, kIdentity, 0);
  open_edge(mask, GroupElement{1, 0, 0}, 1);
  open_edge(mask, GroupElement{0, 1, 0}, 1);  // b -> b^2, unreachable from the origin
  CHECK(oriented_cluster(mask, kOrigin).size() == 3);

  const auto full = percolate_box(box, 1.0, 1);
  const auto cone = oriented_cluster(full, kOrigin);
  std::set<GroupElement> members;
  for (std::size_t i = 0; i < box->vertex_count(); ++i) members.insert(to_element(box->vertex(i)));
  std::set<GroupElement> expected{kIdentity};
  std::deque<GroupElement> queue{kIdentity};
  while (!queue.empty()) {
    const auto g = queue.front();
    queue.pop_front();
    for (Generator s : {Generator::A, Generator::B}) {
      const auto h = apply_generator(g, s);
      if (members.contains(h) && expected.insert(h).second) queue.push_back(h);
    }
  }
  std::set<GroupElement> got;
  for (const auto& p : cone) got.insert(to_element(p));
  CHECK(got == expected);

  CHECK_THROWS_AS(oriented_cluster(full, Point{100, 0, 0, 0}), std::out_of_range);
}

TEST_CASE("hand networks follow circuit algebra") {
  CHECK(std::abs(resistance(2, {{0, 1}}, 0, {1}) - 1.0) <= 1e-8);
  CHECK(std::abs(resistance(2, {{0, 1}, {0, 1}}, 0, {1}) - 0.5) <= 1e-8);
  CHECK(std::abs(resistance(4, {{0, 1}, {1, 2}, {2, 3}}, 0, {3}) - 3.0) <= 1e-8);
  CHECK(std::abs(resistance(5, {{0, 1}, {1, 4}, {0, 2}, {2, 3}, {3, 4}}, 0, {4}) - 1.2) <= 1e-8);
  CHECK(std::abs(resistance(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 2}}, 0, {3}) - 1.0) <= 1e-8);
  CHECK(std::abs(resistance(4, {{0, 1}, {0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 3}, {1, 2}}, 0, {3}) -
                 5.0 / 7) <= 1e-8);
  CHECK(std::abs(resistance(3, {{0, 1}, {0, 2}}, 0, {1, 2}) - 0.5) <= 1e-8);

  const auto cut = solve_resistance({4, {{0, 1}, {2, 3}}}, 0, std::vector<std::int32_t>{3});
  CHECK_FALSE(cut.connected);
  CHECK(cut.resistance == std::numeric_limits<double>::infinity());
  CHECK(cut.component_size == 2);
}

TEST_CASE("effective resistance on hand masks") {
  auto single = closed_mask(heis_box(1));
  open_edge(single, kIdentity, 0);
  CHECK(std::abs(effective_resistance(single, kOrigin, 1).resistance - 1.0) <= 1e-8);

  auto parallel = single;
  open_edge(parallel, kIdentity, 1);
  CHECK(std::abs(effective_resistance(parallel, kOrigin, 1).resistance - 0.5) <= 1e-8);

  auto series = closed_mask(heis_box(2));
  open_edge(series, kIdentity, 0);
  open_edge(series, GroupElement{1, 0, 0}, 0);
  CHECK(std::abs(effective_resistance(series, kOrigin, 2).resistance - 2.0) <= 1e-8);

  const auto none = effective_resistance(closed_mask(heis_box(2)), kOrigin, 2);
  CHECK_FALSE(none.connected);
  CHECK(std::isinf(none.resistance));
}

TEST_CASE("solver failure is reported") {
  const auto mask = percolate_box(Lattice::heisenberg(), 8, 1.0, 1);
  SolverOptions starved{1e-14, 0.0, 1};
  CHECK_THROWS_AS(effective_resistance(mask, kOrigin, 8, starved), SolverError);
}

TEST_CASE("opening edges never raises resistance") {
  const auto box = heis_box(6);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto sparse = effective_resistance(percolate_box(box, 0.6, seed), kOrigin, 6);
    const auto dense = effective_resistance(percolate_box(box, 0.8, seed), kOrigin, 6);
    const auto full = effective_resistance(percolate_box(box, 1.0, seed), kOrigin, 6);
    CAPTURE(seed);
    CHECK(dense.resistance <= sparse.resistance + 1e-9);
    CHECK(full.resistance <= dense.resistance + 1e-9);
  }
}

TEST_CASE("path flows") {
  for (int r : {2, 4, 8}) {
    const auto one = path_flow_energy(1.0, 1, r, 4);
    CHECK(one.surviving == 1);
    CHECK(std::abs(one.energy - r) <= 1e-12);
  }
  const auto many = path_flow_energy(1.0, 20000, 8, 4);
  CHECK(many.energy <= 8.0);
  CHECK(many.flow.max_divergence_error() <= 1e-9);

  auto blocked = closed_mask(heis_box(3));
  const auto empty = path_flow_energy(blocked, 100, 1);
  CHECK(empty.surviving == 0);
  CHECK(std::isinf(empty.energy));
}

TEST_CASE("Thomson bound and flow conservation") {
  for (double p : {1.0, 0.9}) {
    for (int r : {2, 4, 6}) {
      for (std::uint64_t seed : {1u, 2u}) {
        const auto mask = percolate_box(Lattice::heisenberg(), r, p, seed);
        const auto flow = path_flow_energy(mask, 5000, seed + 100);
        if (flow.surviving == 0) continue;
        const auto reff = effective_resistance(mask, kOrigin, r);
        CAPTURE(p);
        CAPTURE(r);
        CHECK(flow.flow.max_divergence_error() <= 1e-9);
        CHECK(std::abs(flow.flow.energy() - flow.energy) <= 1e-12 * flow.energy);
        REQUIRE(reff.connected);
        CHECK(reff.resistance <= flow.energy + 1e-9);
      }
    }
  }
}

TEST_CASE("resistance profiles") {
  const std::vector<int> radii{4, 8, 12, 16};
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  const auto full = resistance_profile(Lattice::heisenberg(), 1.0, radii, seeds);
  for (std::size_t s = 1; s < seeds.size(); ++s)
    for (std::size_t i = 0; i < radii.size(); ++i)
      CHECK(full.per_seed[s].entries[i].effective_resistance ==
            full.per_seed[0].entries[i].effective_resistance);
  for (std::size_t i = 1; i + 1 < radii.size(); ++i) {
    const double before = full.mean_resistance[i] - full.mean_resistance[i - 1];
    const double after = full.mean_resistance[i + 1] - full.mean_resistance[i];
    CHECK(after < before);
  }

  const auto thinned = resistance_profile(Lattice::heisenberg(), 0.9, radii, seeds);
  for (const auto& profile : thinned.per_seed)
    for (std::size_t i = 1; i < profile.entries.size(); ++i) {
      CHECK(profile.entries[i].radius > profile.entries[i - 1].radius);
      CHECK(profile.entries[i].effective_resistance >=
            profile.entries[i - 1].effective_resistance - 1e-9);
      CHECK(profile.entries[i].effective_resistance >= 0.0);
    }

  const std::vector<int> square_radii{4, 8, 16, 32};
  const std::vector<std::uint64_t> one_seed{1};
  const auto square = resistance_profile(Lattice::integer(2), 1.0, square_radii, one_seed);
  std::vector<double> logs;
  for (int r : square_radii) logs.push_back(std::log(r));
  CHECK(fit_line(logs, square.mean_resistance).slope > 0.1);

  const std::vector<int> bad{8, 4};
  CHECK_THROWS_AS(resistance_profile(Lattice::heisenberg(), 1.0, bad, seeds), std::invalid_argument);
}
