#pragma once

#include <map>
#include <string>
#include <vector>

#include "ggv/harness/structure_file.hpp"

namespace ggv {

struct Fixture {
  std::string name;
  std::string description;
  Structure structure;
  /// Expected verdict per applicable suite; suites not listed are inapplicable.
  std::map<std::string, bool> expected;
};

/// Names of the built-in fixtures, in registry order.
std::vector<std::string> fixture_names();
/// Builds a fixture by name. Throws UsageError for an unknown name.
Fixture make_fixture(const std::string& name);

}  // namespace ggv
