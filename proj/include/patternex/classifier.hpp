#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "patternex/bit_matrix.hpp"

namespace patternex {

/// Recursive witness that a pattern splits into single rows by horizontal
/// cuts that each separate the 1-entries of at most one column.
struct SeparationTree {
  struct Node {
    int first_row = 0;  // span, inclusive, in the root pattern's rows
    int last_row = 0;
    int cut = 0;  // rows of the span in the upper part; 0 for a leaf
    std::optional<int> spanning_column;
    int upper = -1;
    int lower = -1;
    int depth = 0;

    bool is_leaf() const { return cut == 0; }
  };

  std::vector<Node> nodes;
  int root = -1;

  const Node& node(int i) const { return nodes.at(i); }
  int depth() const { return nodes.at(root).depth; }
};

struct ClassWitness {
  int s = 0;
  SeparationTree tree;
};

struct OrderedGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, 0-based
};

/// Vertical separability at a horizontal cut.
struct Separation {
  int cut = 0;
  std::optional<int> spanning_column;
};

bool is_acyclic(const Pattern& p);

/// Columns with 1-entries both within the first `cut` rows and below them.
std::vector<int> spanning_columns(const Pattern& p, int cut);

/// Smallest cut with at most one spanning column. Throws for single-row patterns.
std::optional<Separation> is_vertically_separable(const Pattern& p);
std::optional<Separation> is_horizontally_separable(const Pattern& p);

/// Minimum s for which p is class-s, or nullopt when p is not vertically degenerate.
std::optional<ClassWitness> class_number(const Pattern& p);
bool is_vertically_degenerate(const Pattern& p);

/// Checks the structural invariants of a tree against p.
bool validate_tree(const Pattern& p, const SeparationTree& tree);

/// Classes obtained by applying every admissible cut of a band at once.
std::optional<int> relaxed_class_number(const Pattern& p);

/// First permutation in lexicographic order (row i of the result is row
/// perm[i] of p) that makes p vertically degenerate. Throws std::logic_error if
/// none exists although p is acyclic.
std::optional<std::vector<int>> find_degenerate_row_permutation(const Pattern& p);

/// Row vertices 0..l-1 precede column vertices l..l+k-1.
OrderedGraph pattern_to_ordered_graph(const Pattern& p);
int interval_chromatic_number(const OrderedGraph& g);

}  // namespace patternex
