// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <string>
#include <vector>

namespace pegll {

struct SourceLoc {
    int line = 0;  // 1-based; 0 = unknown
    int col = 0;
};

struct Diagnostic {
    SourceLoc loc;
    std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

inline std::string to_string(const Diagnostic& d) {
    if (d.loc.line <= 0) return d.message;
    return std::to_string(d.loc.line) + ":" + std::to_string(d.loc.col) + ": " + d.message;
}

}  // namespace pegll
