#include "bv/gridworld.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace bv {

Move inverse(Move m) {
  switch (m) {
    case Move::Up: return Move::Down;
    case Move::Down: return Move::Up;
    case Move::Left: return Move::Right;
    case Move::Right: return Move::Left;
  }
  return m;
}

char to_char(Move m) {
  switch (m) {
    case Move::Up: return 'U';
    case Move::Down: return 'D';
    case Move::Left: return 'L';
    case Move::Right: return 'R';
  }
  return '?';
}

namespace {

Cell step(Cell from, Move m) {
  switch (m) {
    case Move::Up: return {from.x, from.y + 1};
    case Move::Down: return {from.x, from.y - 1};
    case Move::Left: return {from.x - 1, from.y};
    case Move::Right: return {from.x + 1, from.y};
  }
  return from;
}

}  // namespace

GridWorld::GridWorld(int width, int height, Cell start,
                     std::vector<Cell> obstacles)
    : width_(width), height_(height), start_(start) {
  if (width_ < 1 || height_ < 1) {
    throw std::invalid_argument("GridWorld: dimensions must be positive");
  }
  if (!in_bounds(start_)) {
    throw std::invalid_argument("GridWorld: start cell out of bounds");
  }
  mask_.assign(static_cast<std::size_t>(width_) * height_, 0);
  obstacle_count_ = 0;
  for (const Cell& c : obstacles) {
    if (!in_bounds(c)) {
      throw std::invalid_argument("GridWorld: obstacle cell out of bounds");
    }
    if (c == start_) {
      throw std::invalid_argument("GridWorld: start cell cannot be an obstacle");
    }
    auto& slot = mask_[static_cast<std::size_t>(c.y) * width_ + c.x];
    if (slot != 0) {
      throw std::invalid_argument("GridWorld: duplicate obstacle cell");
    }
    slot = 1;
    ++obstacle_count_;
  }
}

std::vector<Cell> GridWorld::obstacle_cells() const {
  std::vector<Cell> cells;
  cells.reserve(obstacle_count_);
  for (int x = 0; x < width_; ++x) {
    for (int y = 0; y < height_; ++y) {
      if (is_obstacle({x, y})) cells.push_back({x, y});
    }
  }
  return cells;
}

GridWorld generate_world(int width, int height, double ratio, RngStream& rng) {
  if (width < 1 || height < 1 ||
      static_cast<std::int64_t>(width) * height < 2) {
    throw std::invalid_argument("generate_world: need at least two cells");
  }
  if (!(ratio >= 0.0 && ratio < 1.0)) {
    throw std::invalid_argument("generate_world: ratio must lie in [0, 1)");
  }
  const std::uint64_t cells = static_cast<std::uint64_t>(width) * height;
  const std::uint64_t target = static_cast<std::uint64_t>(
      std::llround(ratio * static_cast<double>(cells - 1)));

  // Candidate indices exclude the start cell (0, 0); a partial Fisher-Yates
  // pass draws the obstacle set uniformly without replacement.
  std::vector<std::uint64_t> candidates(cells - 1);
  std::iota(candidates.begin(), candidates.end(), 1);
  std::vector<Cell> obstacles;
  obstacles.reserve(target);
  for (std::uint64_t i = 0; i < target; ++i) {
    const std::uint64_t j = i + rng.next_below(candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
    const std::uint64_t index = candidates[i];
    obstacles.push_back({static_cast<int>(index % width),
                         static_cast<int>(index / width)});
  }
  return GridWorld(width, height, {0, 0}, std::move(obstacles));
}

Plan random_plan(std::size_t length, RngStream& rng) {
  if (length == 0) {
    throw std::invalid_argument("random_plan: length must be positive");
  }
  Plan plan;
  plan.moves.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    plan.moves.push_back(static_cast<Move>(rng.next_below(4)));
  }
  return plan;
}

Trace execute_plan(const GridWorld& world, const Plan& plan, double theta,
                   RngStream& rng) {
  if (plan.moves.empty()) {
    throw std::invalid_argument("execute_plan: plan must be nonempty");
  }
  Trace trace;
  trace.visited.reserve(plan.moves.size() + 1);
  Cell position = world.start();
  trace.visited.push_back(position);
  for (const Move m : plan.moves) {
    const Move actual = rng.next_bernoulli(theta) ? inverse(m) : m;
    const Cell next = step(position, actual);
    if (world.in_bounds(next)) position = next;
    trace.visited.push_back(position);
    if (world.is_obstacle(position)) ++trace.hit_count;
  }
  return trace;
}

bool requirement_holds(const Trace& trace, const Requirement& req) {
  if (req.max_hits_exclusive < 1) {
    throw std::invalid_argument("Requirement: hit bound must be at least 1");
  }
  return trace.hit_count < req.max_hits_exclusive;
}

ObservationSummary observe_failures(double p_fail_true, std::uint64_t n,
                                    RngStream& rng) {
  if (n == 0) {
    throw std::invalid_argument("observe_failures: need at least one observation");
  }
  std::uint64_t failures = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (rng.next_bernoulli(p_fail_true)) ++failures;
  }
  return {failures, n};
}

PlanSimulation::PlanSimulation(GridWorld world, Plan plan,
                               Requirement requirement)
    : world_(std::move(world)),
      plan_(std::move(plan)),
      requirement_(requirement) {
  if (plan_.moves.empty()) {
    throw std::invalid_argument("PlanSimulation: plan must be nonempty");
  }
  if (requirement_.max_hits_exclusive < 1) {
    throw std::invalid_argument("PlanSimulation: hit bound must be at least 1");
  }
}

bool PlanSimulation::simulate(double theta, RngStream& rng) const {
  return requirement_holds(execute_plan(world_, plan_, theta, rng),
                           requirement_);
}

}  // namespace bv
