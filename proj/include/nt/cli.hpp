#pragma once

// Command-line front end: surface, orbit, reduce, classify, laminations and
// render subcommands. JSON goes to `out`, diagnostics to `err`.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nt/classifier.hpp"

namespace nt {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitIndeterminate = 3;

struct RunConfig {
  std::string surface_spec;  // path to a .surf file or a catalog name
  std::string mapping_class;
  Budgets budgets;
  std::optional<std::string> seed_curve;
  int steps = 8;                 // orbit length
  std::string direction = "+";   // laminations
  std::optional<std::string> out_path;
};

/// Loads a surface from a spec file, or from the catalog when no such file
/// exists and the name is a catalog entry. Throws Error(io) or Error(parse).
FiniteTypeSurface load_surface(const std::string& spec);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace nt
