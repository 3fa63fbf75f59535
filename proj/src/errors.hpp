#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace geodiam {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidArgumentError : Error {
  using Error::Error;
};

// The operation requires a connected graph; u and v are representatives of
// two different components.
struct DisconnectedError : Error {
  uint32_t u, v;
  DisconnectedError(uint32_t u_, uint32_t v_)
      : Error("graph is disconnected: vertices " + std::to_string(u_) + " and " +
              std::to_string(v_) + " are in different components"),
        u(u_), v(v_) {}
};

struct IoError : Error {
  using Error::Error;
};

// Malformed input file; line is 1-based.
struct ParseError : Error {
  long line;
  ParseError(long line_, const std::string& what)
      : Error("parse error at line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// flat_partition_by_size was asked for blocks smaller than the largest leaf.
struct NeedSmallerLeavesError : Error {
  uint32_t max_leaf_size;
  explicit NeedSmallerLeavesError(uint32_t max_leaf)
      : Error("requested block size is below the largest leaf block (" +
              std::to_string(max_leaf) + "); rebuild the partition with a deeper leaf level"),
        max_leaf_size(max_leaf) {}
};

// The accounted oracle size exceeds the configured cap; we refuse to build
// rather than spill.
struct OracleSizeError : Error {
  uint64_t entries, cap;
  OracleSizeError(uint64_t entries_, uint64_t cap_)
      : Error("distance oracle would store " + std::to_string(entries_) +
              " entries, exceeding the cap of " + std::to_string(cap_)),
        entries(entries_), cap(cap_) {}
};

}  // namespace geodiam
