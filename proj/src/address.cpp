#include "logichart/address.hpp"

#include <algorithm>

namespace logichart {

NodeAddress NodeAddress::child(Segment s) const {
  std::vector<Segment> out = segments_;
  out.push_back(s);
  return NodeAddress(std::move(out));
}

NodeAddress NodeAddress::parent() const {
  return prefix(segments_.empty() ? 0 : segments_.size() - 1);
}

NodeAddress NodeAddress::prefix(std::size_t n) const {
  n = std::min(n, segments_.size());
  return NodeAddress(std::vector<Segment>(segments_.begin(), segments_.begin() + n));
}

bool NodeAddress::starts_with(const NodeAddress& other) const {
  return other.size() <= size() &&
         std::equal(other.segments_.begin(), other.segments_.end(), segments_.begin());
}

std::string NodeAddress::to_string() const {
  std::string out;
  for (const Segment& s : segments_) {
    if (!out.empty()) out += '.';
    out += s.is_alt() ? 'a' : 'b';
    out += std::to_string(s.value);
  }
  return out;
}

}  // namespace logichart
