#include "bv/text_formats.hpp"

#include <charconv>
#include <stdexcept>
#include <vector>

namespace bv {

Plan parse_plan(std::string_view text) {
  if (text.empty()) {
    throw std::invalid_argument("plan: must contain at least one move");
  }
  Plan plan;
  plan.moves.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'U': plan.moves.push_back(Move::Up); break;
      case 'D': plan.moves.push_back(Move::Down); break;
      case 'L': plan.moves.push_back(Move::Left); break;
      case 'R': plan.moves.push_back(Move::Right); break;
      default:
        throw std::invalid_argument(
            std::string("plan: illegal character '") + text[i] +
            "' at position " + std::to_string(i + 1) +
            " (expected one of U, D, L, R)");
    }
  }
  return plan;
}

std::string format_plan(const Plan& plan) {
  std::string text;
  text.reserve(plan.moves.size());
  for (const Move m : plan.moves) text.push_back(to_char(m));
  return text;
}

Requirement parse_requirement(std::string_view text) {
  constexpr std::string_view kPrefix = "hits<";
  if (text.substr(0, kPrefix.size()) != kPrefix) {
    throw std::invalid_argument("requirement: expected the form hits<K");
  }
  const std::string_view number = text.substr(kPrefix.size());
  std::uint64_t bound = 0;
  const auto result =
      std::from_chars(number.data(), number.data() + number.size(), bound);
  if (result.ec != std::errc{} ||
      result.ptr != number.data() + number.size() || number.empty()) {
    throw std::invalid_argument("requirement: '" + std::string(number) +
                                "' is not a positive integer");
  }
  if (bound < 1) {
    throw std::invalid_argument("requirement: hit bound must be at least 1");
  }
  return Requirement{bound};
}

std::string format_requirement(const Requirement& req) {
  return "hits<" + std::to_string(req.max_hits_exclusive);
}

GridWorld parse_world(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(begin, end - begin));
    begin = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) {
    throw std::invalid_argument("world: empty grid");
  }
  const std::size_t width = lines.front().size();
  if (width == 0) {
    throw std::invalid_argument("world: empty row");
  }
  std::vector<Cell> obstacles;
  Cell start;
  int starts_seen = 0;
  for (std::size_t y = 0; y < lines.size(); ++y) {
    if (lines[y].size() != width) {
      throw std::invalid_argument("world: ragged row " + std::to_string(y + 1) +
                                  " (expected width " + std::to_string(width) +
                                  ", got " + std::to_string(lines[y].size()) +
                                  ")");
    }
    for (std::size_t x = 0; x < width; ++x) {
      const Cell cell{static_cast<int>(x), static_cast<int>(y)};
      switch (lines[y][x]) {
        case '.': break;
        case '#': obstacles.push_back(cell); break;
        case 'S':
          ++starts_seen;
          start = cell;
          break;
        default:
          throw std::invalid_argument(
              std::string("world: illegal character '") + lines[y][x] +
              "' (expected '.', '#', or 'S')");
      }
    }
  }
  if (starts_seen != 1) {
    throw std::invalid_argument("world: expected exactly one 'S', found " +
                                std::to_string(starts_seen));
  }
  return GridWorld(static_cast<int>(width), static_cast<int>(lines.size()),
                   start, std::move(obstacles));
}

std::string write_world(const GridWorld& world) {
  std::string text;
  text.reserve(static_cast<std::size_t>(world.height()) * (world.width() + 1));
  for (int y = 0; y < world.height(); ++y) {
    for (int x = 0; x < world.width(); ++x) {
      const Cell cell{x, y};
      if (cell == world.start()) {
        text.push_back('S');
      } else if (world.is_obstacle(cell)) {
        text.push_back('#');
      } else {
        text.push_back('.');
      }
    }
    text.push_back('\n');
  }
  return text;
}

ObservationSummary parse_observations(std::string_view text) {
  if (text.empty()) {
    throw std::invalid_argument("observations: empty");
  }
  const std::size_t slash = text.find('/');
  if (slash != std::string_view::npos) {
    const std::string_view failures_text = text.substr(0, slash);
    const std::string_view count_text = text.substr(slash + 1);
    std::uint64_t failures = 0;
    std::uint64_t count = 0;
    auto r1 = std::from_chars(failures_text.data(),
                              failures_text.data() + failures_text.size(),
                              failures);
    auto r2 = std::from_chars(count_text.data(),
                              count_text.data() + count_text.size(), count);
    if (failures_text.empty() || count_text.empty() || r1.ec != std::errc{} ||
        r2.ec != std::errc{} ||
        r1.ptr != failures_text.data() + failures_text.size() ||
        r2.ptr != count_text.data() + count_text.size()) {
      throw std::invalid_argument("observations: expected failures/total, got '" +
                                  std::string(text) + "'");
    }
    if (count == 0) {
      throw std::invalid_argument("observations: total must be positive");
    }
    if (failures > count) {
      throw std::invalid_argument("observations: failures exceed total");
    }
    return {failures, count};
  }
  std::uint64_t failures = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == 'F') {
      ++failures;
    } else if (text[i] != 'S') {
      throw std::invalid_argument(
          std::string("observations: illegal character '") + text[i] +
          "' at position " + std::to_string(i + 1) + " (expected S or F)");
    }
  }
  return {failures, text.size()};
}

}  // namespace bv
