#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "upsilon/network.hpp"

namespace upsilon {

enum class OpKind { DeleteIsolatedBoundaryVertex, ContractBoundarySpike, DeleteBoundaryEdge };

// One layer-stripping operation, with enough data to undo it.
struct LayerOp {
  OpKind kind = OpKind::DeleteIsolatedBoundaryVertex;
  VertexId vertex = -1;  // the isolated vertex, or the boundary end of a spike
  EdgeKey edge = -1;     // spike or boundary edge
  VertexId ends[2] = {-1, -1};  // endpoints of `edge` in key order

  // Interior end of a spike.
  VertexId spike_inner() const { return ends[0] == vertex ? ends[1] : ends[0]; }
  std::string to_string() const;
  bool operator==(const LayerOp& o) const {
    return kind == o.kind && vertex == o.vertex && edge == o.edge && ends[0] == o.ends[0] && ends[1] == o.ends[1];
  }
};

// Applicable operations: spikes and boundary edges by edge key, then isolated boundary vertices.
std::vector<LayerOp> find_strippable(const PartialGraph& g);
bool is_applicable(const PartialGraph& g, const LayerOp& op);
PartialGraph apply_op(const PartialGraph& g, const LayerOp& op);
// Spike contraction needs a unit weight.
Network apply_op(const Network& n, const LayerOp& op);
// Inverse of apply_op on graphs.
PartialGraph undo_op(const PartialGraph& g, const LayerOp& op);

// graphs[0] is the smallest stage and graphs.back() the input; ops[j] strips
// graphs[j + 1] down to graphs[j]. labellings[j][i] is the boundary vertex of
// graphs[j] carrying label i (standard form only).
struct Filtration {
  std::vector<PartialGraph> graphs;
  std::vector<LayerOp> ops;
  std::vector<std::vector<VertexId>> labellings;
};

struct FlowerResult {
  PartialGraph flower;
  Filtration filtration;
};
// Strips until no operation applies. Without rng the lowest op is taken each time,
// otherwise a uniformly random applicable op.
FlowerResult reduce_to_flower(const PartialGraph& g, std::mt19937_64* rng = nullptr);
bool is_flower(const PartialGraph& g);
bool is_layerable(const PartialGraph& g);

// Standard form: isolated boundary vertices form graphs[0]; every later stage
// adjoins one spike or boundary edge. The top labelling sorts the boundary by id
// and a contracted spike passes its label inward. Empty if g is not layerable.
std::optional<Filtration> standard_form_filtration(const PartialGraph& g);
// Standard form using a prescribed top-down order of spike and edge deletions.
// The top labelling defaults to the boundary sorted by id.
Filtration standard_form_from_ops(const PartialGraph& g, const std::vector<LayerOp>& ops,
                                  const std::vector<VertexId>& top_labelling = {});
// Spike and edge deletions taken greedily by lowest edge key until none applies.
std::vector<LayerOp> greedy_edge_ops(const PartialGraph& g);

// ---------------------------------------------------------------- complete reducibility

struct ReductionTrace {
  enum class Kind { Strip, SplitDisjoint, SplitWedge, Empty, Irreducible };
  Kind kind = Kind::Empty;
  PartialGraph graph;          // graph at this node
  std::vector<LayerOp> ops;    // Strip: operations applied in order
  VertexId wedge_vertex = -1;  // SplitWedge
  std::vector<ReductionTrace> children;
};

struct ReducibilityResult {
  bool completely_reducible = false;
  ReductionTrace trace;
  std::vector<PartialGraph> irreducible_leaves;
};
ReducibilityResult is_completely_reducible(const PartialGraph& g);
// Rebuilds the graph at the root of a trace from its leaves.
PartialGraph replay(const ReductionTrace& t);
// No strips, connected, nonempty and no boundary cut vertex.
bool is_irreducible(const PartialGraph& g);
std::string trace_to_string(const ReductionTrace& t);

// ---------------------------------------------------------------- degenerate weights

struct DegenerateWitness {
  Network network;  // over Q
  VertexFunction u; // nonzero element of U0 with Q coefficients
};
// Boundary weights summing to zero at each boundary vertex of a nonempty flower,
// interior offsets making u = (0 on boundary, 1 inside) lie in U0.
DegenerateWitness degenerate_weights_general(const PartialGraph& flower);
// The flower construction extended by unit weights and zero offsets to all of g.
DegenerateWitness degenerate_network_on(const PartialGraph& g);
// Normalized (d = 0) weights on an irreducible graph with u in U0 nonzero at every interior vertex.
DegenerateWitness degenerate_weights_normalized(const PartialGraph& g);

}  // namespace upsilon
