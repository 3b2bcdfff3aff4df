#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "pgcaps/cap.hpp"

namespace pgcaps {

/// PGCAP text format:
///   line 1:      PGCAP 1 <N> <q> <n>
///   lines 2..n+1: N+1 space-separated field element indices, the canonical
///                 homogeneous coordinates of one cap point.
/// The parser rejects non-canonical rows, duplicate points and collinear
/// triples with a line-numbered error.

class CapParseError : public std::runtime_error {
public:
    CapParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg),
          line_number(line) {}
    int line_number;
};

struct LoadedCap {
    std::unique_ptr<ProjectiveSpace> space;
    Cap cap;
    CoverageMap coverage;
};

void write_cap(std::ostream& os, const Cap& cap);
void write_cap_file(const std::string& path, const Cap& cap);

LoadedCap read_cap(std::istream& is);
LoadedCap read_cap_file(const std::string& path);

}  // namespace pgcaps
