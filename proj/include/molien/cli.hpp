#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "molien/molien.hpp"
#include "molien/oracle.hpp"
#include "molien/rdplan.hpp"

namespace molien {

enum class OutputFormat { Text, Obj };

struct RunConfig {
  std::string data_dir;
  std::string command;
  std::vector<std::string> args;
  unsigned degree_limit = kDefaultMaxDegree;
  OutputFormat format = OutputFormat::Text;
  std::optional<std::string> output_path;
  unsigned threads = 0;
};

struct ModelEntry {
  std::string name;
  std::string file;
  std::string table;
  std::size_t character = 0;
};

struct Manifest {
  std::string root;  // the data directory
  std::string metadata;
  std::map<std::string, std::string> tables;  // table name -> path relative to root
  std::vector<ModelEntry> models;

  std::string path(const std::string& relative) const;
  bool has_table(const std::string& name) const { return tables.count(name) != 0; }
  CharacterTable load_table(const std::string& name) const;
  GroupMetadata load_metadata() const;
};

Manifest load_manifest(const std::string& data_dir);

struct CommandResult {
  int status = 0;  // 0 ok, 1 check failure, 2 usage or input error
  std::string output;
};

CommandResult cmd_ingest(const RunConfig& config, const std::vector<std::string>& files);
CommandResult cmd_molien(const RunConfig& config, const std::string& group);
CommandResult cmd_oracle(const RunConfig& config, const std::string& model);
CommandResult cmd_bounds(const RunConfig& config, const std::optional<std::string>& group);
CommandResult cmd_verify(const RunConfig& config);
CommandResult cmd_tables(const RunConfig& config, const std::string& which);

/// Full command line handling; argv[0] is the program name.
int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

std::string default_data_dir();

}  // namespace molien
