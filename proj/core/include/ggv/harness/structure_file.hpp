#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ggv/ghermitian.hpp"
#include "ggv/hypersurface.hpp"

namespace ggv {

/// Everything a check target may carry. Sections absent from the source stay empty.
struct Structure {
  Chart chart;
  std::optional<GcsData> gcs;
  std::optional<GMetric> metric;
  std::optional<LeeForm> lee;
  std::optional<Hypersurface> hyp;

  int dim() const { return chart.dim; }
  /// Requires both the generalized complex data and the metric.
  GHermitian hermitian() const;
  bool has_hermitian() const { return gcs.has_value() && metric.has_value(); }
};

/// Parses the line-based structure format (see README). Throws ParseError with
/// 1-based line and column, or DimensionMismatch.
Structure parse_structure(std::string_view text);
/// Reads and parses a file; an unreadable file is a UsageError.
Structure load_structure_file(const std::string& path);
/// Canonical text of a structure; parse_structure(write_structure(s)) evaluates identically.
std::string write_structure(const Structure& s);

}  // namespace ggv
