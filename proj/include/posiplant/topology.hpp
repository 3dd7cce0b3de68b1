#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "posiplant/model.hpp"

namespace posiplant {

// Undirected simple graph on vertices [0, num_vars). Edges are canonical
// (i < j), sorted ascending and unique. Defect injection records removed
// vertices in `inactive` and keeps the index space intact (no relabeling).
struct EdgeSet {
    Var num_vars = 0;
    std::vector<std::pair<Var, Var>> edges;
    std::string label;
    std::vector<Var> inactive;

    std::size_t activeNodes() const { return num_vars - inactive.size(); }

    // canonicalizes edge order, sorts, dedups; throws std::invalid_argument
    // on self-loops or endpoints out of range
    void normalize();
};

// m x m grid of K_{t,t} cells; vertices (row, col, side, index) with linear
// id ((row*m + col)*2 + side)*t + index. Side-0 qubits couple to the cell
// below, side-1 to the cell to the right. 2tm^2 vertices.
EdgeSet chimera(int m, int t = 4);

// Pegasus lattice, coordinates (u, w, k, z) with u in {0,1} (orientation),
// w in [0,m) (perpendicular offset), k in [0,12) (track), z in [0,m-1)
// (position along the track) and the standard offset lists; the 8(m-1)
// boundary qubits without internal couplers are excluded. Vertex ids are
// dense in lexicographic (u, w, k, z) order over the surviving qubits.
// 24m(m-1) - 8(m-1) vertices, maximum degree 15.
EdgeSet pegasus(int m);

// Zephyr lattice, coordinates (u, w, k, j, z) with u in {0,1}, w in [0,2m],
// k in [0,t), j in {0,1}, z in [0,m); vertex id is
// (((u*(2m+1) + w)*t + k)*2 + j)*m + z. 4tm(2m+1) vertices, maximum degree
// 4t + 4.
EdgeSet zephyr(int m, int t = 4);

EdgeSet complete(int n);

// G(n, p): each pair included independently with probability p, sampled in
// canonical pair order so the result is a pure function of (n, p, seed).
EdgeSet randomGraph(int n, double p, std::uint64_t seed);

// Removes node_kills uniformly-random active vertices (with their incident
// edges), then edge_kills uniformly-random surviving edges. Throws
// std::out_of_range when either count exceeds what is available.
EdgeSet applyDefects(const EdgeSet& g, std::size_t node_kills, std::size_t edge_kills,
                     std::uint64_t seed);

// Text format: header "n <num_vars>" then one "i j" pair per line, LF only.
void writeEdgeList(const EdgeSet& g, std::ostream& out);
EdgeSet readEdgeList(std::istream& in);

std::vector<std::size_t> degrees(const EdgeSet& g);

// True when every active vertex is reachable from every other; vacuously
// true with fewer than two active vertices. Inactive vertices are ignored,
// but an isolated *active* vertex makes the graph disconnected.
bool isConnected(const EdgeSet& g);

} // namespace posiplant
