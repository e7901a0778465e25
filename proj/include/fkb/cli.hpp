#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fkb::cli {

inline constexpr const char* kBuildId = "fkb1-4e9d21c";

// Runs the command line. Exit codes: 0 success, 1 domain/data error,
// 2 usage error.
int run(const std::vector<std::string>& args);

// The pinned splitmix64 reference draws checked by `selftest`, shipped
// here so independent builds can compare.
struct RngReference {
  std::uint64_t seed;
  std::uint64_t draws[3];
};
extern const RngReference kRngReference;

}  // namespace fkb::cli
