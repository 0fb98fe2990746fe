#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace densestream {

using NodeId = std::int64_t;
using Edge = std::pair<NodeId, NodeId>;

inline Edge normalized(NodeId u, NodeId v) { return u <= v ? Edge{u, v} : Edge{v, u}; }

// Packs a normalized edge into one 64-bit key. Node ids must fit in 32 bits,
// which holds for every graph size this library targets.
inline std::uint64_t edge_key(const Edge& e) {
  return (static_cast<std::uint64_t>(e.first) << 32) | static_cast<std::uint32_t>(e.second);
}

inline Edge edge_from_key(std::uint64_t key) {
  return Edge{static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xffffffffULL)};
}

// Malformed text input (edge files, configs). Carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::int64_t line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::int64_t line() const { return line_; }

 private:
  std::int64_t line_;
};

// Rejection sampling exhausted its retry budget.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Stream violates an ordering contract (e.g. decreasing timestamps).
class MalformedStream : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace densestream
