#include "subfvm/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace subfvm {

PeriodicMap pair_periodic(const Mesh& mesh, Axis axis, double offset, double tol) {
    auto coord = [&](int i) { return axis == Axis::X ? mesh.nodes[i].x : mesh.nodes[i].y; };
    auto transverse = [&](int i) { return axis == Axis::X ? mesh.nodes[i].y : mesh.nodes[i].x; };

    double lo = std::numeric_limits<double>::max(), hi = std::numeric_limits<double>::lowest();
    for (int i = 0; i < mesh.num_nodes(); ++i) {
        lo = std::min(lo, coord(i));
        hi = std::max(hi, coord(i));
    }

    std::vector<int> masters, slaves;
    for (int i = 0; i < mesh.num_nodes(); ++i) {
        if (std::abs(coord(i) - lo) <= tol) masters.push_back(i);
        if (std::abs(coord(i) - hi) <= tol) slaves.push_back(i);
    }

    PeriodicMap map;
    map.axis = axis;
    for (int s : slaves) {
        int best = -1;
        int matches = 0;
        for (int m : masters) {
            if (std::abs(transverse(m) - transverse(s)) <= tol) {
                ++matches;
                best = m;
            }
        }
        if (matches == 0)
            throw MeshError("periodic pairing: no master for node " + std::to_string(s) +
                            " at transverse coordinate " + std::to_string(transverse(s)));
        if (matches > 1)
            throw MeshError("periodic pairing: ambiguous match for node " + std::to_string(s));
        map.pairs.push_back({best, s, offset});
    }
    std::sort(map.pairs.begin(), map.pairs.end(),
              [](const PeriodicPair& a, const PeriodicPair& b) { return a.slave < b.slave; });
    return map;
}

std::vector<ResolvedConstraint> resolve_constraints(const std::vector<PeriodicMap>& maps) {
    // slave -> all (master, offset) links, in map order.
    std::map<int, std::vector<std::pair<int, double>>> links;
    for (const auto& m : maps)
        for (const auto& p : m.pairs) links[p.slave].push_back({p.master, p.offset});

    // Follow the first link of each node until a non-slave root is reached.
    auto chase = [&](int start) {
        int node = start;
        double offset = 0.0;
        std::set<int> seen;
        while (links.count(node)) {
            if (!seen.insert(node).second)
                throw MeshError("cyclic periodic constraints at node " + std::to_string(start));
            const auto& link = links[node].front();
            offset += link.second;
            node = link.first;
        }
        return std::pair<int, double>{node, offset};
    };

    std::vector<ResolvedConstraint> out;
    for (const auto& [slave, slave_links] : links) {
        auto [root, offset] = chase(slave);
        // Every alternative link must resolve to the same root and offset.
        for (const auto& link : slave_links) {
            auto [r2, o2] = chase(link.first);
            o2 += link.second;
            if (r2 != root || std::abs(o2 - offset) > 1e-12)
                throw MeshError("inconsistent periodic constraints at node " +
                                std::to_string(slave));
        }
        out.push_back({slave, root, offset});
    }
    return out;
}

}  // namespace subfvm
