#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qslab/scalar_field.hpp"

namespace qslab::reeb {

using geom::ScalarField;
using geom::SphereMesh;

// Contour tree of a vertex-sampled field on a genus-zero mesh. Vertex value
// ties are broken by index, so the sweep is deterministic on non-Morse
// inputs. Every mesh vertex contributes its lumped weight as an atom sitting
// on exactly one tree edge; edge measures add up to one.
struct ReebNode {
  int vertex;    // mesh vertex realizing the critical event
  double level;
};

struct ReebEdge {
  int lo = -1;  // node ids, lo below hi in the tie-broken order
  int hi = -1;
  double measure = 0.0;
  std::vector<std::pair<double, double>> atoms;  // (level, weight), ascending
};

struct ReebGraph {
  std::vector<ReebNode> nodes;
  std::vector<ReebEdge> edges;
  std::vector<int> vertex_edge;  // mesh vertex -> edge carrying its weight

  int leaf_count() const;
  double total_measure() const;
  bool is_tree() const;  // connected and acyclic
};

// Union-find sweep over the sorted vertex levels (join + split trees, then
// the merge pass). Throws on a disconnected mesh.
ReebGraph build_reeb(const ScalarField& H);

struct MedianPoint {
  int node = -1;     // set when the median sits at a node
  int edge = -1;     // set when it sits inside an edge
  double level = 0.0;
  bool tie = false;  // some complementary component weighs exactly 1/2
  std::vector<double> component_measures;  // balance certificate, all <= 1/2
};

// The point whose complementary subtrees all weigh at most 1/2. Exact-half
// splits resolve toward the higher-level side and set the tie flag.
MedianPoint median(const ReebGraph& reeb);

// Level of the measured-tree median of H: monotone, normalized, additive on
// commuting pairs up to mesh resolution, Lipschitz in the sup norm, and zero
// whenever the support of H has measure below 1/2 and its complement
// carries the balance point.
double zeta_med(const ScalarField& H);

struct TauResult {
  double value = 0.0;
  double best_shoulder = 0.0;
  std::vector<std::pair<double, double>> evaluations;  // (shoulder, zeta)
};

// Upper bound for the quasi-measure of the closed vertex region C: the
// minimum of zeta_med over smoothed indicator fields 1 - smootherstep(d/s)
// for the given shoulder widths s. Throws if C is empty or a family member
// fails F >= 1 on C.
TauResult tau_med(const SphereMesh& mesh, const std::vector<int>& region,
                  const std::vector<double>& shoulders);
TauResult tau_med(const SphereMesh& mesh, const std::vector<int>& region, int budget);

struct BracketIneqRow {
  double pi = 0.0;           // |zeta(H+K) - zeta(H) - zeta(K)|
  double bracket_sup = 0.0;  // sup |{H, K}|
  double ratio = 0.0;        // pi / sqrt(bracket_sup)
};

struct BracketIneqReport {
  std::vector<BracketIneqRow> rows;
  double max_ratio = 0.0;
};

BracketIneqReport bracket_inequality_report(
    const std::vector<std::pair<ScalarField, ScalarField>>& pairs,
    const std::function<double(const ScalarField&)>& zeta);

std::string reeb_to_json_string(const ReebGraph& reeb, int indent = 2);

}  // namespace qslab::reeb
