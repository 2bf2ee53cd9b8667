#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "gds/graph.hpp"

namespace gds {

enum class GraphFormat { Csv, MatrixMarket };

/// Dense CSV: optional `# directed=true|false` header line, then n rows of n
/// comma-separated weights. Without the header, directedness is inferred from
/// symmetry.
Graph read_graph_csv(std::istream& in);
void write_graph_csv(std::ostream& out, const Graph& graph);

/// Matrix Market coordinate format (real, integer or pattern field; general or
/// symmetric). Symmetric files become undirected graphs.
Graph read_graph_mtx(std::istream& in);
void write_graph_mtx(std::ostream& out, const Graph& graph);

/// Picks the format from the extension: `.mtx` is Matrix Market, anything else
/// dense CSV.
GraphFormat format_for_path(const std::filesystem::path& path);
Graph read_graph(const std::filesystem::path& path);
void write_graph(const std::filesystem::path& path, const Graph& graph);

/// CSV with header `id,x,y,s1,...,sk`.
SpatialTable read_spatial_table_csv(std::istream& in);
void write_spatial_table_csv(std::ostream& out, const SpatialTable& table);

/// Complex scalars in CSV cells: `re+imj`, `re-imj`, or a plain real number.
std::string format_complex(Complex z);
Complex parse_complex(const std::string& text);

}  // namespace gds
