#include "mabench/csv.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mabench/format.hpp"

namespace mabench {

void write_csv(std::span<const SweepRow> rows, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.scheme << ',' << to_decimal(r.lambda) << ',' << r.trials << ','
        << to_decimal(r.mean_throughput) << ',' << to_decimal(r.ci95_halfwidth) << ',' << r.seed
        << ',' << r.params_digest << '\n';
  }
}

void emit_csv(std::span<const SweepRow> rows, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows to write");
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(rows, file);
  file.flush();
  if (!file) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<SweepRow> read_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::invalid_argument("read_csv: missing or unexpected header");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (int i = 0; i < 6; ++i) {
      const auto comma = line.find(',', start);
      if (comma == std::string::npos) throw std::invalid_argument("read_csv: short row: " + line);
      cells.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    cells.push_back(line.substr(start));
    rows.push_back({cells[0], parse_number<double>(cells[1]), parse_number<std::uint64_t>(cells[2]),
                    parse_number<double>(cells[3]), parse_number<double>(cells[4]),
                    parse_number<std::uint64_t>(cells[5]), cells[6]});
  }
  return rows;
}

}  // namespace mabench
