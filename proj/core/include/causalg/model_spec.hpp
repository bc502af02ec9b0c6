#pragma once

#include <string>
#include <vector>

#include "causalg/errors.hpp"

namespace causalg {

/// Regular Bayesian network: variables listed in causal order, parents of
/// each variable precede it in the order.
struct BNSpec {
  struct Variable {
    std::string name;
    int levels = 2;               // r_i >= 2
    std::vector<int> parents;     // indices of earlier variables
  };
  std::vector<Variable> variables;

  int index_of(const std::string& name) const;
  /// Throws on level counts < 2 or a parent not preceding its child.
  void validate() const;
  /// Size of the joint sample space, prod r_i.
  long joint_size() const;
  /// Parameter count of the saturated conditional parametrization
  /// (before merging by the conditional independences).
  long saturated_parameter_count() const;
};

/// Single rooted tree; circumstances are vertices, outcomes are leaves.
struct TreeSpec {
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> edges;  // (from, to)

  int index_of(const std::string& id) const;
  /// Throws on multiple roots, cycles, or unreachable vertices; returns
  /// the root index.
  int validate() const;
};

/// Causal partial order on circumstances, given by its cover relations.
struct HasseDiagram {
  struct Circumstance {
    std::string id;
    bool terminal = false;
  };
  std::vector<Circumstance> vertices;
  std::vector<std::pair<int, int>> edges;  // cover relations (from, to)

  int index_of(const std::string& id) const;
  /// Throws on cycles, transitive shortcuts (non-irreducible covers),
  /// outgoing edges from terminal circumstances, or circumstances with
  /// no path to a terminal one.
  void validate() const;

  static HasseDiagram from_tree(const TreeSpec& tree);
};

/// Maximal chain of circumstances: one possible unfolding.
struct Chain {
  std::vector<int> vertices;
  std::string label;
  bool operator==(const Chain& other) const { return vertices == other.vertices; }
};

inline constexpr long kDefaultChainCap = 1'000'000;

/// All maximal chains, each once, in lexicographic-by-vertex-id order.
/// Throws when the count exceeds `cap`.
std::vector<Chain> chains(const HasseDiagram& diagram,
                          long cap = kDefaultChainCap);

}  // namespace causalg
