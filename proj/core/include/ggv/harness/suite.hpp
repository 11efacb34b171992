#pragma once

#include <string>
#include <vector>

#include "ggv/harness/structure_file.hpp"
#include "ggv/report.hpp"

namespace ggv {

enum class Suite { algebraic, integrability, conf_integrability, gk, conf_gk, hypersurface, all };

/// Throws UsageError for an unknown name.
Suite parse_suite(const std::string& name);
std::string suite_name(Suite s);
/// The single suites, in the order `all` runs them.
std::vector<Suite> single_suites();

/// Whether the structure carries what the suite needs.
bool applicable(const Structure& s, Suite suite);

/// Runs one suite. Throws UsageError when the suite does not apply (`all` is not accepted here).
CheckReport run_suite(const Structure& s, Suite suite, const CheckOptions& opts = {});
/// Runs a suite, expanding `all` to every applicable single suite.
std::vector<CheckReport> run_suites(const Structure& s, Suite suite, const CheckOptions& opts = {});

}  // namespace ggv
