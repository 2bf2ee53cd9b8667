#pragma once

#include "json.hpp"

#include "gds/baselines.hpp"
#include "gds/downsample.hpp"

namespace gds {

/// Vertex numbering used in serialized output. Internally vertices are
/// 0-based; human-facing files use 1-based labels.
enum class IndexBase { Zero = 0, One = 1 };

/// Nested array of [re, im] pairs, row-major.
nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json partition_to_json(const Partition& p, IndexBase base);

/// Reads {"n": .., "kept": [..]} (purged optional; checked when present).
Partition partition_from_json(const nlohmann::json& j, IndexBase base);

/// Partition, sdqm and reconstructibility; with `include_matrices` also the
/// dense F_kL and reconstruction map when they exist.
nlohmann::json operator_to_json(const DownsampleOperator& op, IndexBase base, bool include_matrices = false);

nlohmann::json cut_report_to_json(const CutReport& report);

}  // namespace gds
