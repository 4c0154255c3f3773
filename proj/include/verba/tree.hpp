#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "verba/word.hpp"

namespace verba {

/// Exact length in the tree's natural metric (coset-adjacency units);
/// one unit equals two edges of the bipartite tree.
struct TreeLength {
  std::int64_t half_units = 0;  // measured in edges of the bipartite tree
  double value() const { return double(half_units) / 2.0; }
  std::string str() const;
  bool operator==(const TreeLength&) const = default;
};

/// Vertex of the bipartite tree: a group element or a coset g H_a.
/// Coset representatives are canonical: no trailing syllable in the factor.
struct TreeVertex {
  static TreeVertex element(Word rep) { return TreeVertex{false, std::move(rep), 0}; }
  static TreeVertex coset(const Word& rep, int factor);

  bool is_coset = false;
  Word rep;
  std::uint16_t factor = 0;  // meaningful for coset vertices only

  bool operator==(const TreeVertex& other) const {
    return is_coset == other.is_coset && rep == other.rep &&
           (!is_coset || factor == other.factor);
  }
  std::string str() const;
};

struct TreeVertexHash {
  std::size_t operator()(const TreeVertex& v) const;
};

using VertexSet = std::unordered_set<TreeVertex, TreeVertexHash>;

/// Left action h . v.
TreeVertex act(const Word& h, const TreeVertex& v);

/// Exact distance in edges of the bipartite tree (closed form).
std::int64_t tree_distance(const TreeVertex& v1, const TreeVertex& v2);

/// All vertices within `radius` edges; throws BallTooLarge past `cap`.
std::vector<TreeVertex> bfs_ball(const TreeVertex& center, int radius, std::size_t cap = 2000000);
/// BFS distance oracle; nullopt if v2 is farther than max_radius.
std::optional<std::int64_t> bfs_distance(const TreeVertex& v1, const TreeVertex& v2, int max_radius);

/// The invariant line of a hyperbolic element, restricted to translates
/// k in [-window, window] of the fundamental period.
struct AxisSegment {
  std::vector<TreeVertex> vertices;  // consecutive vertices are adjacent
  TreeLength natural_length() const { return TreeLength{std::int64_t(vertices.size()) - 1}; }
};

AxisSegment axis(const Word& h, int window);

/// Minimal displacement of an axis vertex; equals the central length.
TreeLength translation_length(const Word& h);

struct AxisOverlap {
  enum class Kind { disjoint, segment, line } kind;
  TreeLength length;  // meaningful for `segment`
};

/// Common part of two axes within the given window. `line` when the inputs
/// commute (equal axes); throws WindowTooSmall when a finite overlap touches
/// the enumerated window boundary.
AxisOverlap axis_overlap(const Word& h1, const Word& h2, int window);

}  // namespace verba
