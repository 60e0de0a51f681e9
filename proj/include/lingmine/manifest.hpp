#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <string>

#include <json.hpp>

#include "lingmine/core.hpp"
#include "lingmine/jsonl.hpp"

namespace lingmine {

inline std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string file_digest(const std::string& path) {
  return hex64(fnv1a64(io::read_file(path)));
}

// A run manifest written beside every CLI output: enough provenance (config
// hash, seed, input digests, counts) to reproduce the file.
struct Manifest {
  std::string subcommand;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::map<std::string, std::string> inputs;   // path -> digest
  std::map<std::string, std::string> outputs;  // path -> digest
  std::map<std::string, std::int64_t> counts;
  std::map<std::string, std::string> notes;

  void add_input(const std::string& path) { inputs[path] = file_digest(path); }
  void add_output(const std::string& path) { outputs[path] = file_digest(path); }

  void write(const std::string& beside_output) const {
    nlohmann::json j;
    j["tool"] = "lingmine";
    j["subcommand"] = subcommand;
    j["seed"] = seed;
    j["config_hash"] = config_hash;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["counts"] = counts;
    if (!notes.empty()) j["notes"] = notes;
    io::write_file(beside_output + ".manifest.json", j.dump(2) + "\n");
  }
};

}  // namespace lingmine
