// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pegll::cli {

// Command-line front door:
//
//   pegll check <grammar> [--json]
//   pegll parse <grammar> (<input> | -e <text>) [--full] [--trees N]
//         [--bsr] [--extents] [--trace] [--json]
//   pegll compare <grammar> (<input> | -e <text>) [--full]
//
// Exit codes: 0 = match/agreement, 1 = no match/disagreement, 2 = usage or
// grammar error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pegll::cli
