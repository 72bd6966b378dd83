#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mabench {

/// Entry point behind the `mabench` executable. `args` excludes the
/// program name. Data goes to the configured output path (or `out` when
/// none is set), diagnostics to `err`. Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::optional<std::string> env_seed = std::nullopt);

}  // namespace mabench
