#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bss/mol.hpp"

namespace bss {

struct VertexMapping {
  // (vertex in A, vertex in B); injective both ways, labels match pairwise
  std::vector<std::pair<int, int>> pairs;
};

enum class MatchKind { Isomorphic, CommonSubgraph, NoOverlap };

struct MatchOutcome {
  MatchKind kind = MatchKind::NoOverlap;
  std::vector<VertexMapping> mappings;  // all isomorphisms, or the single MCS
  int mcs_size = 0;
  double tanimoto = 0.0;
};

// Every label- and edge-preserving bijection V(A) -> V(B). Empty when the
// vertex counts or element multisets differ.
std::vector<VertexMapping> find_isomorphisms(const MolecularGraph& a,
                                             const MolecularGraph& b);

// Undirected graph over an explicit vertex list; used for the modular
// product of two molecular graphs and for site compatibility graphs.
struct CompatGraph {
  std::vector<std::pair<int, int>> vertices;  // (index in A, index in B)
  std::vector<std::vector<char>> adj;         // dense adjacency

  int size() const { return static_cast<int>(vertices.size()); }
};

// Modular product under induced-subgraph semantics: vertices are
// label-compatible pairs, edges require i!=k, j!=l and
// edge_A(i,k) == edge_B(j,l).
CompatGraph modular_product(const MolecularGraph& a, const MolecularGraph& b);

// Maximum clique by branch and bound with a greedy-coloring bound.
// Deterministic: fixed expansion order, first maximum found wins ties.
std::vector<int> max_clique(const CompatGraph& g);

// MCS via maximum clique of the modular product. kind is CommonSubgraph or
// NoOverlap; isomorphic inputs come out as CommonSubgraph of full size and
// tanimoto 1 (the pipeline calls find_isomorphisms first).
MatchOutcome find_mcs(const MolecularGraph& a, const MolecularGraph& b);

// m / (n1 + n2 - m). Throws "invalid match size" outside 0 <= m <= min(n1,n2).
double tanimoto(int m, int n1, int n2);

// adjacency-list text dump of a compatibility graph, for the debug CLI
std::string dump_compat_graph(const CompatGraph& g);

}  // namespace bss
