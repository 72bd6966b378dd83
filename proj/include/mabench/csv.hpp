#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mabench/sim.hpp"

namespace mabench {

inline constexpr std::string_view kCsvHeader =
    "scheme,lambda,trials,mean_throughput_pps,ci95_halfwidth,seed,params_digest";

/// Header plus one line per row, every number in shortest round-trip form.
void write_csv(std::span<const SweepRow> rows, std::ostream& out);

/// Writes the CSV to `path`. Throws std::runtime_error naming the path on
/// I/O failure and std::invalid_argument on an empty row list.
void emit_csv(std::span<const SweepRow> rows, const std::string& path);

/// Inverse of write_csv.
std::vector<SweepRow> read_csv(std::string_view text);

}  // namespace mabench
