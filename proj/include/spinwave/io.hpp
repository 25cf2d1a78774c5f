#ifndef SPINWAVE_IO_HPP
#define SPINWAVE_IO_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spinwave/propagation.hpp"

namespace spinwave::io {

//! Output directory or file cannot be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Snapshot = std::vector<std::pair<std::string, std::string>>;

//! Generic table: '#'-comment header lines, a column row, then 17-digit values.
struct CsvTable {
  Snapshot comments;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string to_csv(const CsvTable& table);

//! site,time,value rows in grid order, provenance as comments.
std::string trace_to_csv(const SpinTrace& trace);

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;  // one or two
};

//! Minimal SVG line plot: frame, tick labels, axis labels and polylines.
std::string render_svg(const PlotSpec& plot);

struct ManifestFile {
  std::string name;
  std::uint64_t hash = 0;
  std::size_t bytes = 0;
};

struct ArtifactManifest {
  std::string command;
  Snapshot parameters;
  std::vector<ManifestFile> files;
};

//! Collects file contents and writes them (plus manifest.json) at the end.
class ArtifactWriter {
 public:
  ArtifactWriter(std::filesystem::path dir, std::string command, Snapshot parameters);

  void add(const std::string& name, std::string content);
  //! Writes every file, then manifest.json. Throws OutputError on failure.
  ArtifactManifest commit();

  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
  ArtifactManifest manifest_;
  std::vector<std::pair<std::string, std::string>> pending_;
};

std::string manifest_json(const ArtifactManifest& manifest);
std::string hex64(std::uint64_t value);

}  // namespace spinwave::io

#endif
