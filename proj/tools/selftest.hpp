#pragma once

#include <cstdint>
#include <string>

#include "commands.hpp"

namespace hcyclic::cli {

struct SelftestOptions {
  int instances = 50;   // per property
  int max_n = 24;
  std::string property;  // empty: all
  int instance = -1;     // replay a single instance
};

int cmd_selftest(const SelftestOptions& options, const GlobalOptions& global);

}  // namespace hcyclic::cli
