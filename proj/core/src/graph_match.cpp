#include "bss/graph_match.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bss {

namespace {

struct IsoSearch {
  const MolecularGraph& a;
  const MolecularGraph& b;
  std::vector<int> order;        // vertices of A in assignment order
  std::vector<int> a_to_b;       // current partial map, -1 = unassigned
  std::vector<char> b_used;
  std::vector<VertexMapping> out;

  void run() {
    int n = a.vertex_count();
    a_to_b.assign(n, -1);
    b_used.assign(n, 0);

    // assign high-degree vertices first, label as secondary key
    std::vector<int> degree(n, 0);
    for (const auto& [x, y] : a.edges) { ++degree[x]; ++degree[y]; }
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      if (degree[x] != degree[y]) return degree[x] > degree[y];
      if (a.elements[x] != a.elements[y]) return a.elements[x] < a.elements[y];
      return x < y;
    });

    extend(0);
  }

  bool consistent(int va, int vb) const {
    if (a.elements[va] != b.elements[vb]) return false;
    for (int prev = 0; prev < static_cast<int>(a_to_b.size()); ++prev) {
      int mapped = a_to_b[prev];
      if (mapped < 0) continue;
      if (a.has_edge(va, prev) != b.has_edge(vb, mapped)) return false;
    }
    return true;
  }

  void extend(int depth) {
    if (depth == a.vertex_count()) {
      VertexMapping m;
      for (int v = 0; v < a.vertex_count(); ++v) m.pairs.emplace_back(v, a_to_b[v]);
      out.push_back(std::move(m));
      return;
    }
    int va = order[depth];
    for (int vb = 0; vb < b.vertex_count(); ++vb) {
      if (b_used[vb] || !consistent(va, vb)) continue;
      a_to_b[va] = vb;
      b_used[vb] = 1;
      extend(depth + 1);
      a_to_b[va] = -1;
      b_used[vb] = 0;
    }
  }
};

struct CliqueSearch {
  const CompatGraph& g;
  std::vector<int> best;
  std::vector<int> current;

  // greedy coloring of candidates; returns color count per candidate prefix
  void expand(std::vector<int>& cand) {
    if (cand.empty()) {
      if (current.size() > best.size()) best = current;
      return;
    }

    // color classes as an upper bound on the clique extension
    std::vector<int> color(cand.size());
    std::vector<std::vector<int>> classes;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      int v = cand[i];
      std::size_t c = 0;
      for (; c < classes.size(); ++c) {
        bool clash = false;
        for (int u : classes[c])
          if (g.adj[v][u]) { clash = true; break; }
        if (!clash) break;
      }
      if (c == classes.size()) classes.emplace_back();
      classes[c].push_back(v);
      color[i] = static_cast<int>(c) + 1;
    }

    // reorder candidates by color so the bound tightens from the back
    std::vector<std::pair<int, int>> by_color;
    for (std::size_t i = 0; i < cand.size(); ++i) by_color.emplace_back(color[i], cand[i]);
    std::stable_sort(by_color.begin(), by_color.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });

    for (int i = static_cast<int>(by_color.size()) - 1; i >= 0; --i) {
      auto [c, v] = by_color[i];
      if (current.size() + c <= best.size()) return;  // bound
      std::vector<int> next;
      for (int j = 0; j < i; ++j)
        if (g.adj[v][by_color[j].second]) next.push_back(by_color[j].second);
      current.push_back(v);
      expand(next);
      current.pop_back();
    }
  }

  std::vector<int> run() {
    std::vector<int> cand(g.size());
    std::iota(cand.begin(), cand.end(), 0);
    if (!cand.empty()) best = {};
    expand(cand);
    std::sort(best.begin(), best.end());
    return best;
  }
};

}  // namespace

std::vector<VertexMapping> find_isomorphisms(const MolecularGraph& a,
                                             const MolecularGraph& b) {
  if (a.vertex_count() != b.vertex_count()) return {};
  if (a.element_multiset() != b.element_multiset()) return {};
  if (a.edges.size() != b.edges.size()) return {};

  IsoSearch search{a, b};
  search.run();
  return std::move(search.out);
}

CompatGraph modular_product(const MolecularGraph& a, const MolecularGraph& b) {
  CompatGraph g;
  for (int i = 0; i < a.vertex_count(); ++i)
    for (int j = 0; j < b.vertex_count(); ++j)
      if (a.elements[i] == b.elements[j]) g.vertices.emplace_back(i, j);

  int n = g.size();
  g.adj.assign(n, std::vector<char>(n, 0));
  for (int u = 0; u < n; ++u) {
    auto [i, j] = g.vertices[u];
    for (int v = u + 1; v < n; ++v) {
      auto [k, l] = g.vertices[v];
      if (i == k || j == l) continue;
      if (a.has_edge(i, k) == b.has_edge(j, l)) {
        g.adj[u][v] = 1;
        g.adj[v][u] = 1;
      }
    }
  }
  return g;
}

std::vector<int> max_clique(const CompatGraph& g) {
  if (g.size() == 0) return {};
  CliqueSearch search{g};
  return search.run();
}

MatchOutcome find_mcs(const MolecularGraph& a, const MolecularGraph& b) {
  MatchOutcome out;
  CompatGraph product = modular_product(a, b);
  std::vector<int> clique = max_clique(product);
  out.mcs_size = static_cast<int>(clique.size());
  out.tanimoto = tanimoto(out.mcs_size, a.vertex_count(), b.vertex_count());
  if (out.mcs_size == 0) {
    out.kind = MatchKind::NoOverlap;
    return out;
  }
  out.kind = MatchKind::CommonSubgraph;
  VertexMapping m;
  for (int v : clique) m.pairs.push_back(product.vertices[v]);
  std::sort(m.pairs.begin(), m.pairs.end());
  out.mappings.push_back(std::move(m));
  return out;
}

double tanimoto(int m, int n1, int n2) {
  if (n1 < 1 || n2 < 1 || m < 0 || m > std::min(n1, n2))
    throw std::runtime_error("invalid match size");
  return static_cast<double>(m) / static_cast<double>(n1 + n2 - m);
}

std::string dump_compat_graph(const CompatGraph& g) {
  std::ostringstream os;
  for (int u = 0; u < g.size(); ++u) {
    os << u << " (" << g.vertices[u].first << "," << g.vertices[u].second << "):";
    for (int v = 0; v < g.size(); ++v)
      if (g.adj[u][v]) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

}  // namespace bss
