#pragma once

// Command-line front end: `sturm <group> <command> [flags]`.
//
// Exit status 0 on success, 1 on a usage error or a refused cap, 2 when a
// `verify` command finds a failure.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sturm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailed = 2;

/// Enumeration caps. STURM_CAP overrides them with a comma-separated list of
/// name=value pairs, e.g. "balanced=24,ostrowski=500000".
struct Caps {
  std::size_t balanced;
  std::size_t rotation;
  std::uint64_t ostrowski;
  std::size_t profile;
  std::size_t stabilize;

  Caps();
  /// Throws InvalidArgument on unknown names or non-positive values.
  static Caps parse(std::string_view spec, Caps base = Caps());
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sturm::cli
