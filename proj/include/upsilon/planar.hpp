#pragma once

#include <map>
#include <optional>
#include <random>
#include <vector>

#include "upsilon/fundamental.hpp"

namespace upsilon {

// A connected graph drawn in the closed disk with its boundary vertices on the circle.
// rotation[x] lists the darts with tail x counterclockwise; boundary_order lists the
// boundary vertices counterclockwise along the circle.
struct EmbeddedPartialGraph {
  PartialGraph graph;
  std::map<VertexId, std::vector<Dart>> rotation;
  std::vector<VertexId> boundary_order;
};

// The circle between boundary_order[i] and boundary_order[i + 1] is arc i. In the
// augmented map arc i contributes a counterclockwise dart (tail boundary_order[i])
// and a clockwise dart (tail boundary_order[i + 1]). At a boundary vertex the
// rotation becomes [ccw arc out, real darts..., cw arc out].
struct FaceDart {
  bool arc = false;
  int id = 0;  // real: the dart; arc: 2 i (counterclockwise) or 2 i + 1 (clockwise)
  bool operator==(const FaceDart& o) const { return arc == o.arc && id == o.id; }
};

struct Face {
  std::vector<FaceDart> walk;     // clockwise, face on the right of every dart
  std::optional<std::size_t> arc; // the clockwise arc it contains, if any
  bool boundary() const { return arc.has_value(); }
};

// Faces other than the exterior of the disk. Faces containing arc 0, 1, ... come first.
struct FaceStructure {
  std::vector<Face> faces;
  std::map<Dart, std::size_t> face_of;  // face on the right of each real dart
};

// Throws GraphError on an inconsistent rotation system or a non-disk Euler count.
void validate_embedding(const EmbeddedPartialGraph& eg);
// A graph without boundary gets its lowest-id vertex as the single boundary vertex.
EmbeddedPartialGraph designate_boundary(const EmbeddedPartialGraph& eg);
FaceStructure trace_faces(const EmbeddedPartialGraph& eg);

// Dual vertices are the faces (ids = face index). Dual edge k is e† for the dart
// dart_of(k, false): its tail is the face on the right of e. w(e†) = 1 / w(e).
struct DualNetwork {
  EmbeddedPartialGraph embedded;
  Network network;
  FaceStructure primal_faces;
};
// Needs a connected, normalized network whose weights are invertible.
DualNetwork dual(const Network& n, const EmbeddedPartialGraph& eg);
// dual(dual(n)) matches n vertex by vertex, with dart e†† equal to the reverse of e.
bool double_dual_check(const Network& n, const EmbeddedPartialGraph& eg);

struct DualityReport {
  ModuleDecomposition primal, dual;
  bool agree() const { return primal == dual; }
};
// Reduced modules of a normalized unit-weight network and of its dual.
DualityReport duality_report(const Network& n, const EmbeddedPartialGraph& eg);
bool verify_duality(const Network& n, const EmbeddedPartialGraph& eg);

// v on the dual with w(e) du(e) = dv(e†), where du(e) = u(tail) - u(head), and
// v = 0 at dual vertex 0. Throws if u is not harmonic.
struct Conjugate {
  DualNetwork dual;
  VertexFunction v;
};
Conjugate harmonic_conjugate(const Network& n, const EmbeddedPartialGraph& eg, const VertexFunction& u);

// Random connected straight-line graph: boundary points on a parabola, interior
// lattice points inside their hull, non-crossing segments.
EmbeddedPartialGraph random_circular_planar(std::mt19937_64& rng, std::size_t max_vertices);

}  // namespace upsilon
