#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <system_error>

#include "spinwave/io.hpp"
#include "spinwave/numeric.hpp"

namespace spinwave::io {

std::string hex64(std::uint64_t value) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string manifest_json(const ArtifactManifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["hash"] = "fnv1a-64";
  auto& params = j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : m.parameters) params[k] = v;
  auto& files = j["files"] = nlohmann::ordered_json::array();
  for (const auto& f : m.files) {
    files.push_back({{"name", f.name}, {"hash", hex64(f.hash)}, {"bytes", f.bytes}});
  }
  return j.dump(2) + "\n";
}

ArtifactWriter::ArtifactWriter(std::filesystem::path dir, std::string command, Snapshot parameters)
    : dir_(std::move(dir)) {
  manifest_.command = std::move(command);
  manifest_.parameters = std::move(parameters);
}

void ArtifactWriter::add(const std::string& name, std::string content) {
  pending_.emplace_back(name, std::move(content));
}

ArtifactManifest ArtifactWriter::commit() {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec || !std::filesystem::is_directory(dir_)) {
    throw OutputError("cannot create output directory '" + dir_.string() + "'");
  }
  const auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream out(dir_ / name, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) throw OutputError("cannot write '" + (dir_ / name).string() + "'");
  };
  manifest_.files.clear();
  for (const auto& [name, content] : pending_) {
    write(name, content);
    manifest_.files.push_back({name, fnv1a(content), content.size()});
  }
  write("manifest.json", manifest_json(manifest_));
  return manifest_;
}

}  // namespace spinwave::io
