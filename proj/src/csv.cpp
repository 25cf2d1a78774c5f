#include <string>

#include "spinwave/io.hpp"
#include "spinwave/numeric.hpp"

namespace spinwave::io {

std::string to_csv(const CsvTable& table) {
  std::string out;
  for (const auto& [k, v] : table.comments) out += "# " + k + " = " + v + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string trace_to_csv(const SpinTrace& trace) {
  CsvTable t;
  t.comments.emplace_back("generator", trace.provenance.generator);
  for (const auto& p : trace.provenance.parameters) t.comments.push_back(p);
  if (trace.provenance.kernel_hash) {
    t.comments.emplace_back("kernel_hash", hex64(trace.provenance.kernel_hash));
  }
  if (!trace.grid.resolution.empty()) t.comments.emplace_back("resolution", trace.grid.resolution);
  t.columns = {"site", "time", "value"};
  const std::size_t nt = trace.grid.times.size();
  for (std::size_t s = 0; s < trace.grid.sites.size(); ++s) {
    for (std::size_t i = 0; i < nt; ++i) {
      t.rows.push_back({static_cast<double>(trace.grid.sites[s]), trace.grid.times[i],
                        trace.at(s, i)});
    }
  }
  return to_csv(t);
}

}  // namespace spinwave::io
