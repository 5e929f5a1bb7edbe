#include "qslab/reeb.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "qslab/numerics.hpp"

namespace qslab::reeb {

namespace {

// Simulation-of-simplicity comparison: by value, ties by vertex index.
struct Less {
  const std::vector<double>& val;
  bool operator()(int a, int b) const {
    if (val[a] != val[b]) return val[a] < val[b];
    return a < b;
  }
};

// One merge tree (join when ascending, split when descending). parent[v]
// points from the head of a finished component to the vertex that absorbed
// it; children are the reverse adjacency.
struct MergeTree {
  std::vector<int> parent;
  std::vector<std::vector<int>> children;
};

MergeTree build_merge_tree(const SphereMesh& mesh, const std::vector<int>& order) {
  int n = mesh.vertex_count();
  MergeTree tree;
  tree.parent.assign(n, -1);
  tree.children.assign(n, {});
  UnionFind uf(n);
  std::vector<int> head(n, -1);
  std::vector<char> done(n, 0);
  std::vector<int> roots;
  for (int v : order) {
    roots.clear();
    for (int w : mesh.neighbors[v]) {
      if (!done[w]) continue;
      int r = uf.find(w);
      if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    for (int r : roots) {
      tree.parent[head[r]] = v;
      tree.children[v].push_back(head[r]);
    }
    done[v] = 1;
    int r = uf.find(v);
    for (int other : roots) r = uf.unite(r, other);
    r = uf.find(v);
    head[r] = v;
  }
  return tree;
}

}  // namespace

int ReebGraph::leaf_count() const {
  std::vector<int> deg(nodes.size(), 0);
  for (const ReebEdge& e : edges) {
    ++deg[e.lo];
    ++deg[e.hi];
  }
  int leaves = 0;
  for (int d : deg)
    if (d == 1) ++leaves;
  return leaves;
}

double ReebGraph::total_measure() const {
  double s = 0.0;
  for (const ReebEdge& e : edges) s += e.measure;
  return s;
}

bool ReebGraph::is_tree() const {
  if (edges.size() + 1 != nodes.size()) return false;
  UnionFind uf(static_cast<int>(nodes.size()));
  for (const ReebEdge& e : edges)
    if (uf.find(e.lo) == uf.find(e.hi))
      return false;
    else
      uf.unite(e.lo, e.hi);
  return uf.components() == 1;
}

ReebGraph build_reeb(const ScalarField& H) {
  const SphereMesh& mesh = *H.mesh;
  if (!mesh.connected()) throw std::invalid_argument("build_reeb: disconnected mesh");
  int n = mesh.vertex_count();
  Less less{H.values};

  std::vector<int> ascending(n);
  std::iota(ascending.begin(), ascending.end(), 0);
  std::sort(ascending.begin(), ascending.end(), less);
  std::vector<int> descending(ascending.rbegin(), ascending.rend());

  MergeTree join = build_merge_tree(mesh, ascending);
  MergeTree split = build_merge_tree(mesh, descending);

  // Augmented contour tree: prune leaves that are regular in the other tree.
  std::vector<std::set<int>> jchild(n), schild(n);
  std::vector<int> jpar = join.parent, spar = split.parent;
  for (int v = 0; v < n; ++v) {
    for (int c : join.children[v]) jchild[v].insert(c);
    for (int c : split.children[v]) schild[v].insert(c);
  }

  struct Arc {
    int a, b;        // augmented tree edge
    int tag_vertex;  // vertex whose weight rides on this arc
  };
  std::vector<Arc> arcs;
  arcs.reserve(n - 1);

  auto lower_ready = [&](int v) { return jchild[v].empty() && schild[v].size() <= 1; };
  auto upper_ready = [&](int v) { return schild[v].empty() && jchild[v].size() <= 1; };

  std::deque<int> queue;
  std::vector<char> queued(n, 0), removed(n, 0);
  for (int v = 0; v < n; ++v)
    if (lower_ready(v) || upper_ready(v)) {
      queue.push_back(v);
      queued[v] = 1;
    }

  auto enqueue = [&](int v) {
    if (v >= 0 && !removed[v] && !queued[v] && (lower_ready(v) || upper_ready(v))) {
      queue.push_back(v);
      queued[v] = 1;
    }
  };

  int remaining = n;
  while (remaining > 1) {
    if (queue.empty()) throw std::logic_error("build_reeb: merge queue starved");
    int v = queue.front();
    queue.pop_front();
    queued[v] = 0;
    if (removed[v] || remaining == 1) continue;
    bool low = lower_ready(v);
    bool up = upper_ready(v);
    if (!low && !up) continue;  // stale entry
    if (low && jpar[v] >= 0) {
      int w = jpar[v];
      arcs.push_back({v, w, v});
      // remove v from the join tree
      jchild[w].erase(v);
      // splice v out of the split tree
      if (!schild[v].empty()) {
        int c = *schild[v].begin();
        spar[c] = spar[v];
        if (spar[v] >= 0) {
          schild[spar[v]].erase(v);
          schild[spar[v]].insert(c);
        }
      } else if (spar[v] >= 0) {
        schild[spar[v]].erase(v);
      }
      removed[v] = 1;
      --remaining;
      enqueue(w);
      if (spar[v] >= 0) enqueue(spar[v]);
      if (!schild[v].empty()) enqueue(*schild[v].begin());
    } else if (up && spar[v] >= 0) {
      int w = spar[v];
      arcs.push_back({v, w, v});
      schild[w].erase(v);
      if (!jchild[v].empty()) {
        int c = *jchild[v].begin();
        jpar[c] = jpar[v];
        if (jpar[v] >= 0) {
          jchild[jpar[v]].erase(v);
          jchild[jpar[v]].insert(c);
        }
      } else if (jpar[v] >= 0) {
        jchild[jpar[v]].erase(v);
      }
      removed[v] = 1;
      --remaining;
      enqueue(w);
      if (jpar[v] >= 0) enqueue(jpar[v]);
      if (!jchild[v].empty()) enqueue(*jchild[v].begin());
    } else {
      // The last vertex of one tree direction; re-examine later.
      continue;
    }
  }
  if (static_cast<int>(arcs.size()) != n - 1)
    throw std::logic_error("build_reeb: merge produced a non-spanning arc set");

  // Weight of the final surviving vertex rides on the last arc emitted.
  int last_vertex = -1;
  for (int v = 0; v < n; ++v)
    if (!removed[v]) last_vertex = v;

  // Augmented adjacency, split into up and down neighbors per vertex.
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
    adj[arcs[i].a].push_back(i);
    adj[arcs[i].b].push_back(i);
  }

  auto is_node_vertex = [&](int v) {
    if (adj[v].size() != 2) return true;
    int up = 0, down = 0;
    for (int ai : adj[v]) {
      int other = arcs[ai].a == v ? arcs[ai].b : arcs[ai].a;
      if (less(v, other))
        ++up;
      else
        ++down;
    }
    return up != 1 || down != 1;
  };

  ReebGraph out;
  out.vertex_edge.assign(n, -1);
  std::vector<int> node_id(n, -1);
  for (int v = 0; v < n; ++v)
    if (is_node_vertex(v)) {
      node_id[v] = static_cast<int>(out.nodes.size());
      out.nodes.push_back({v, H.values[v]});
    }

  // Walk chains between nodes, collecting the atoms tagged on the arcs.
  std::vector<char> arc_used(arcs.size(), 0);
  // The survivor's weight joins the tag of the last arc.
  int last_arc = static_cast<int>(arcs.size()) - 1;

  for (const ReebNode& node : out.nodes) {
    int v = node.vertex;
    for (int ai : adj[v]) {
      if (arc_used[ai]) continue;
      ReebEdge edge;
      std::vector<std::pair<double, int>> atom_list;  // (level key bundled later)
      std::vector<int> chain_vertices;
      int prev = v;
      int cur_arc = ai;
      for (;;) {
        arc_used[cur_arc] = 1;
        int tag = arcs[cur_arc].tag_vertex;
        atom_list.push_back({H.values[tag], tag});
        chain_vertices.push_back(tag);
        if (cur_arc == last_arc && last_vertex >= 0) chain_vertices.push_back(last_vertex);
        int next = arcs[cur_arc].a == prev ? arcs[cur_arc].b : arcs[cur_arc].a;
        if (node_id[next] >= 0) {
          // reached the other node
          int a = v, b = next;
          bool v_lower = less(a, b);
          edge.lo = node_id[v_lower ? a : b];
          edge.hi = node_id[v_lower ? b : a];
          break;
        }
        int follow = -1;
        for (int nai : adj[next])
          if (!arc_used[nai]) follow = nai;
        if (follow < 0) throw std::logic_error("build_reeb: broken chain");
        prev = next;
        cur_arc = follow;
      }
      std::sort(atom_list.begin(), atom_list.end(), [&](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
      });
      for (const auto& [lvl, vert] : atom_list) {
        double w = mesh.vertex_weights[vert];
        if (vert == arcs[last_arc].tag_vertex && last_vertex >= 0)
          w += mesh.vertex_weights[last_vertex];
        edge.atoms.push_back({lvl, w});
        edge.measure += w;
      }
      int edge_id = static_cast<int>(out.edges.size());
      for (int cv : chain_vertices) out.vertex_edge[cv] = edge_id;
      out.edges.push_back(std::move(edge));
    }
  }
  return out;
}

MedianPoint median(const ReebGraph& reeb) {
  int nn = static_cast<int>(reeb.nodes.size());
  if (nn == 0) throw std::invalid_argument("median: empty graph");
  MedianPoint mp;
  if (reeb.edges.empty()) {
    mp.node = 0;
    mp.level = reeb.nodes[0].level;
    return mp;
  }
  double total = reeb.total_measure();

  std::vector<std::vector<int>> incident(nn);
  for (int e = 0; e < static_cast<int>(reeb.edges.size()); ++e) {
    incident[reeb.edges[e].lo].push_back(e);
    incident[reeb.edges[e].hi].push_back(e);
  }

  // Rooted subtree measures: sub[n] = mass strictly inside the branch below
  // node n seen from its parent edge.
  std::vector<int> parent_edge(nn, -1), order;
  std::vector<char> seen(nn, 0);
  order.reserve(nn);
  order.push_back(0);
  seen[0] = 1;
  for (size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    for (int e : incident[v]) {
      int w = reeb.edges[e].lo == v ? reeb.edges[e].hi : reeb.edges[e].lo;
      if (!seen[w]) {
        seen[w] = 1;
        parent_edge[w] = e;
        order.push_back(w);
      }
    }
  }
  std::vector<double> sub(nn, 0.0);
  for (size_t i = order.size(); i-- > 1;) {
    int v = order[i];
    int pe = parent_edge[v];
    int p = reeb.edges[pe].lo == v ? reeb.edges[pe].hi : reeb.edges[pe].lo;
    sub[p] += sub[v] + reeb.edges[pe].measure;
  }

  // Mass on each side of an edge, excluding the edge's own atoms.
  auto out_mass = [&](int e, int endpoint) {
    int lo = reeb.edges[e].lo, hi = reeb.edges[e].hi;
    int child = parent_edge[lo] == e ? lo : hi;
    double below_child = sub[child];
    double other = total - below_child - reeb.edges[e].measure;
    return endpoint == child ? below_child : other;
  };

  constexpr double kHalfSlack = 1e-15;
  // Node candidates first.
  for (int v = 0; v < nn; ++v) {
    double worst = 0.0;
    std::vector<double> branches;
    for (int e : incident[v]) {
      int other = reeb.edges[e].lo == v ? reeb.edges[e].hi : reeb.edges[e].lo;
      double b = out_mass(e, other) + reeb.edges[e].measure;
      branches.push_back(b);
      worst = std::max(worst, b);
    }
    if (worst <= 0.5 + kHalfSlack) {
      mp.node = v;
      mp.level = reeb.nodes[v].level;
      mp.component_measures = branches;
      for (double b : branches)
        if (std::abs(b - 0.5) <= kHalfSlack) mp.tie = true;
      return mp;
    }
  }

  // Otherwise exactly one edge carries the crossing.
  for (int e = 0; e < static_cast<int>(reeb.edges.size()); ++e) {
    double below = out_mass(e, reeb.edges[e].lo);
    double above = out_mass(e, reeb.edges[e].hi);
    if (below > 0.5 + kHalfSlack || above > 0.5 + kHalfSlack) continue;
    double cum = below;
    const auto& atoms = reeb.edges[e].atoms;
    for (size_t i = 0; i < atoms.size(); ++i) {
      cum += atoms[i].second;
      if (cum >= 0.5 - kHalfSlack) {
        bool exact = std::abs(cum - 0.5) <= kHalfSlack;
        size_t pick = i;
        if (exact && i + 1 < atoms.size()) pick = i + 1;  // toward the upper node
        mp.edge = e;
        mp.level = atoms[pick].first;
        mp.tie = exact;
        double mass_below = below, mass_above = above;
        for (size_t j = 0; j < atoms.size(); ++j)
          (j <= pick ? mass_below : mass_above) += atoms[j].second;
        // The picked atom itself is the median point; report both sides
        // without it.
        mass_below -= atoms[pick].second;
        mp.component_measures = {mass_below, mass_above};
        return mp;
      }
    }
  }
  throw std::logic_error("median: no balanced point found");
}

double zeta_med(const ScalarField& H) { return median(build_reeb(H)).level; }

TauResult tau_med(const SphereMesh& mesh, const std::vector<int>& region,
                  const std::vector<double>& shoulders) {
  if (region.empty()) throw std::invalid_argument("tau_med: empty region");
  if (shoulders.empty()) throw std::invalid_argument("tau_med: empty family");
  int n = mesh.vertex_count();
  std::vector<double> dist(n, 1e300);
  for (int v = 0; v < n; ++v)
    for (int c : region) {
      double d = std::acos(std::clamp(mesh.vertices[v].dot(mesh.vertices[c]), -1.0, 1.0));
      dist[v] = std::min(dist[v], d);
    }

  TauResult result;
  result.value = 1e300;
  for (double s : shoulders) {
    if (!(s > 0)) throw std::invalid_argument("tau_med: shoulder must be positive");
    std::vector<double> values(n);
    for (int v = 0; v < n; ++v) values[v] = 1.0 - smootherstep(dist[v] / s);
    for (int c : region)
      if (values[c] < 1.0 - 1e-15)
        throw std::invalid_argument("tau_med: family member drops below one on the region");
    double z = zeta_med(ScalarField::from_values(mesh, std::move(values)));
    result.evaluations.push_back({s, z});
    if (z < result.value) {
      result.value = z;
      result.best_shoulder = s;
    }
  }
  return result;
}

TauResult tau_med(const SphereMesh& mesh, const std::vector<int>& region, int budget) {
  if (budget < 1) throw std::invalid_argument("tau_med: budget must be >= 1");
  std::vector<double> shoulders;
  for (int k = 0; k < budget; ++k)
    shoulders.push_back(0.02 + (0.60 - 0.02) * k / std::max(1, budget - 1));
  return tau_med(mesh, region, shoulders);
}

BracketIneqReport bracket_inequality_report(
    const std::vector<std::pair<ScalarField, ScalarField>>& pairs,
    const std::function<double(const ScalarField&)>& zeta) {
  BracketIneqReport report;
  for (const auto& [H, K] : pairs) {
    BracketIneqRow row;
    row.pi = std::abs(zeta(H + K) - zeta(H) - zeta(K));
    row.bracket_sup = geom::poisson_bracket(H, K).max_abs();
    row.ratio = row.pi / std::max(std::sqrt(row.bracket_sup), 1e-9);
    report.max_ratio = std::max(report.max_ratio, row.ratio);
    report.rows.push_back(row);
  }
  return report;
}

std::string reeb_to_json_string(const ReebGraph& reeb, int indent) {
  nlohmann::ordered_json j;
  j["nodes"] = nlohmann::ordered_json::array();
  for (size_t i = 0; i < reeb.nodes.size(); ++i)
    j["nodes"].push_back({{"id", i}, {"vertex", reeb.nodes[i].vertex},
                          {"level", reeb.nodes[i].level}});
  j["edges"] = nlohmann::ordered_json::array();
  for (const ReebEdge& e : reeb.edges)
    j["edges"].push_back({{"lo", e.lo}, {"hi", e.hi}, {"measure", e.measure}});
  j["total_measure"] = reeb.total_measure();
  return j.dump(indent);
}

}  // namespace qslab::reeb
