#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace tabgrid::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;

struct RecognizeOptions {
  std::filesystem::path layouts;
  std::optional<std::filesystem::path> config;
  std::filesystem::path out;
  std::string orientation = "standard";
};

struct InterpretOptions {
  std::filesystem::path tables;
  std::filesystem::path rules;
  std::filesystem::path out;
};

struct EvalOptions {
  std::string mode;
  std::filesystem::path gt;
  std::filesystem::path pred;
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> report;
  bool strict = false;
};

struct GenFixturesOptions {
  std::filesystem::path spec;
  std::filesystem::path out;
};

int cmd_recognize(const RecognizeOptions& o, std::ostream& out, std::ostream& err);
int cmd_interpret(const InterpretOptions& o, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalOptions& o, std::ostream& out, std::ostream& err);
int cmd_gen_fixtures(const GenFixturesOptions& o, std::ostream& out, std::ostream& err);

// Parses argv and dispatches; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// TABGRID_THREADS, 0 or unset meaning the hardware concurrency.
unsigned worker_count();

}  // namespace tabgrid::cli
