#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "bv/rng.hpp"
#include "bv/verify.hpp"

namespace bv {

// Movement alphabet. Up/Down change the row coordinate y (+1 / -1), Left and
// Right the column coordinate x (-1 / +1). A move that would leave the grid
// is clamped: the agent stays put.
enum class Move : std::uint8_t { Up, Down, Left, Right };

Move inverse(Move m);
char to_char(Move m);

struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Obstacle grid with a distinguished start cell. Immutable once built.
class GridWorld {
 public:
  GridWorld(int width, int height, Cell start, std::vector<Cell> obstacles);

  int width() const { return width_; }
  int height() const { return height_; }
  Cell start() const { return start_; }
  std::uint64_t obstacle_count() const { return obstacle_count_; }

  bool in_bounds(Cell c) const {
    return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
  }
  bool is_obstacle(Cell c) const {
    return mask_[static_cast<std::size_t>(c.y) * width_ + c.x] != 0;
  }

  // Sorted (x-major) listing; canonical for serialization and comparison.
  std::vector<Cell> obstacle_cells() const;

  friend bool operator==(const GridWorld&, const GridWorld&) = default;

 private:
  int width_;
  int height_;
  Cell start_;
  std::vector<std::uint8_t> mask_;
  std::uint64_t obstacle_count_;
};

// Ordered action sequence; never empty.
struct Plan {
  std::vector<Move> moves;
};

// Bounded trace predicate: a run satisfies the requirement iff it hits
// strictly fewer obstacles than the bound.
struct Requirement {
  std::uint64_t max_hits_exclusive = 3;
};

// Execution record: the start cell followed by one cell per move. hit_count
// is the number of post-start entries that are obstacle cells, counting
// revisits.
struct Trace {
  std::vector<Cell> visited;
  std::uint64_t hit_count = 0;
};

// Random world with the start pinned at (0, 0) and exactly
// round(ratio * (width * height - 1)) distinct obstacle cells drawn
// uniformly from the non-start cells.
GridWorld generate_world(int width, int height, double ratio, RngStream& rng);

// Uniformly random move sequence of the given length.
Plan random_plan(std::size_t length, RngStream& rng);

// Executes the plan under action-failure probability theta: each move is
// replaced by its inverse with probability theta, then applied with wall
// clamping. Entering an obstacle cell counts a hit and execution continues
// from that cell.
Trace execute_plan(const GridWorld& world, const Plan& plan, double theta,
                   RngStream& rng);

bool requirement_holds(const Trace& trace, const Requirement& req);

// n i.i.d. Bernoulli(p_fail_true) failure observations.
ObservationSummary observe_failures(double p_fail_true, std::uint64_t n,
                                    RngStream& rng);

// The (world, plan, requirement) triple packaged as a SimulationModel: one
// run executes the plan under theta and evaluates the hit bound.
class PlanSimulation final : public SimulationModel {
 public:
  PlanSimulation(GridWorld world, Plan plan, Requirement requirement);

  bool simulate(double theta, RngStream& rng) const override;

  const GridWorld& world() const { return world_; }
  const Plan& plan() const { return plan_; }
  const Requirement& requirement() const { return requirement_; }

 private:
  GridWorld world_;
  Plan plan_;
  Requirement requirement_;
};

}  // namespace bv
