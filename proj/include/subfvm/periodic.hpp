#pragma once

#include <vector>

#include "subfvm/mesh.hpp"

namespace subfvm {

enum class Axis { X, Y };

struct PeriodicPair {
    int master = -1;  // node on the axis-minimum side
    int slave = -1;   // node on the axis-maximum side
    double offset = 0.0;  // value(slave) = value(master) + offset
};

struct PeriodicMap {
    Axis axis = Axis::X;
    std::vector<PeriodicPair> pairs;
};

/// Matches nodes on the axis-maximum boundary side to nodes on the
/// axis-minimum side by their transverse coordinate.
PeriodicMap pair_periodic(const Mesh& mesh, Axis axis, double offset, double tol = 1e-9);

/// A resolved constraint per slave node: value(slave) = value(root) + offset.
/// Corner nodes under several maps are chained to a single root master.
struct ResolvedConstraint {
    int slave = -1;
    int root = -1;
    double offset = 0.0;
};

/// Collapses a set of periodic maps into a forest of root masters. Chains are
/// followed deterministically (maps in the given order); inconsistent or
/// cyclic constraints raise MeshError.
std::vector<ResolvedConstraint> resolve_constraints(const std::vector<PeriodicMap>& maps);

}  // namespace subfvm
