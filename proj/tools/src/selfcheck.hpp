#pragma once

#include <string>
#include <vector>

namespace bosent::cli {

struct CheckItem {
  std::string name;
  bool pass = false;
  std::string expected;
  std::string measured;
};

/// Golden values for small known states.
std::vector<CheckItem> run_selfcheck();

}  // namespace bosent::cli
