#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "logichart/program.hpp"

namespace logichart {

// One step of a diagram path: a position in a clause body, or the choice of
// a clause under a calling goal.
struct Segment {
  enum class Kind : std::uint8_t { Body, Alt };
  Kind kind = Kind::Body;
  std::uint32_t value = 0;

  static Segment body(std::uint32_t pos) { return {Kind::Body, pos}; }
  static Segment alt(ClauseId id) { return {Kind::Alt, to_index(id)}; }

  bool is_alt() const { return kind == Kind::Alt; }
  ClauseId clause() const { return ClauseId{value}; }

  auto operator<=>(const Segment&) const = default;
};

// Root is the empty path. Addresses embed clause ids, so they survive
// relayout and database patches.
class NodeAddress {
 public:
  NodeAddress() = default;
  explicit NodeAddress(std::vector<Segment> segments) : segments_(std::move(segments)) {}

  const std::vector<Segment>& segments() const { return segments_; }
  std::size_t size() const { return segments_.size(); }
  bool empty() const { return segments_.empty(); }
  const Segment& back() const { return segments_.back(); }

  NodeAddress child(Segment s) const;
  NodeAddress parent() const;
  NodeAddress prefix(std::size_t n) const;
  bool starts_with(const NodeAddress& other) const;

  // Compact text form, e.g. "a5.b0.a1".
  std::string to_string() const;

  auto operator<=>(const NodeAddress&) const = default;

 private:
  std::vector<Segment> segments_;
};

}  // namespace logichart
