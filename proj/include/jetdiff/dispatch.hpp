#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jetdiff/error.hpp"
#include "jetdiff/serialize.hpp"

namespace jetdiff {

struct RunConfig {
  std::string command;
  /// Raw option values; integers and rationals stay strings until parsed.
  std::map<std::string, std::string> params;
  std::vector<unsigned> periods;  // empty: library defaults
  std::vector<unsigned> starts;
  std::optional<std::filesystem::path> cache_path;
  bool use_cache = true;
  unsigned workers = 1;
};

struct ResultRecord {
  std::string command;
  Json inputs;
  Json result;
  std::string engine_version;
  double elapsed_ms = 0;

  Json to_json() const;
};

std::vector<std::string> command_names();

/// UnknownCommand, MissingParam, InvalidArgument, and whatever the module
/// behind the command raises.
ResultRecord dispatch(const RunConfig& config);

/// 2 for invalid input, 3 for computational failures, 4 for I/O.
int exit_code_for(ErrorKind kind);
Json error_record(const std::string& command, ErrorKind kind, const std::string& message);

/// "d=5,delta=1/5" → {d: 5, delta: 1/5}.
std::map<std::string, Rational> parse_assignments(const std::string& text);

}  // namespace jetdiff
