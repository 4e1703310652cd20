#pragma once

#include <filesystem>
#include <iosfwd>

#include "rwcut/graph.hpp"

namespace rwcut {

/**
 * Edge-list text: one edge per line "u v [w]" with 0-based ids and weight
 * defaulting to 1. Blank lines and '#' comments are ignored, except the
 * directive "# vertices: N" which fixes the vertex count (so trailing
 * isolated vertices survive a round trip). Duplicate lines are merged by
 * summing weights.
 *
 * Throws ParseError on malformed lines, self-loops and non-positive weights.
 */
WeightedGraph load_graph(std::istream& in);
WeightedGraph load_graph(const std::filesystem::path& path);

/// Writes the "# vertices: N" directive followed by one "u v w" line per edge.
void write_graph(std::ostream& out, const WeightedGraph& g);
void write_graph(const std::filesystem::path& path, const WeightedGraph& g);

/// One line per vertex: "vertex_id L" or "vertex_id R".
void write_partition(std::ostream& out, const Partition& sides);
void write_partition(const std::filesystem::path& path, const Partition& sides);

/// Every vertex of a graph with `vertex_count` vertices must appear exactly once.
Partition read_partition(std::istream& in, std::size_t vertex_count);
Partition read_partition(const std::filesystem::path& path, std::size_t vertex_count);

} // namespace rwcut
