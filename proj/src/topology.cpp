#include "posiplant/topology.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "posiplant/rng.hpp"

namespace posiplant {

void EdgeSet::normalize() {
    for (auto& [a, b] : edges) {
        if (a == b) throw std::invalid_argument("edge set: self-loop");
        if (a >= num_vars || b >= num_vars) {
            throw std::invalid_argument("edge set: endpoint out of range");
        }
        if (b < a) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    std::sort(inactive.begin(), inactive.end());
    inactive.erase(std::unique(inactive.begin(), inactive.end()), inactive.end());
}

EdgeSet chimera(int m, int t) {
    if (m < 1 || t < 1) throw std::invalid_argument("chimera: m and t must be >= 1");
    const auto id = [m, t](int row, int col, int side, int k) {
        return static_cast<Var>(((row * m + col) * 2 + side) * t + k);
    };
    EdgeSet g;
    g.num_vars = static_cast<Var>(2 * t * m * m);
    g.label = t == 4 ? "chimera(" + std::to_string(m) + ")"
                     : "chimera(" + std::to_string(m) + ",t=" + std::to_string(t) + ")";
    for (int row = 0; row < m; ++row) {
        for (int col = 0; col < m; ++col) {
            for (int k0 = 0; k0 < t; ++k0) {
                for (int k1 = 0; k1 < t; ++k1) {
                    g.edges.push_back({id(row, col, 0, k0), id(row, col, 1, k1)});
                }
            }
            for (int k = 0; k < t; ++k) {
                if (row + 1 < m) g.edges.push_back({id(row, col, 0, k), id(row + 1, col, 0, k)});
                if (col + 1 < m) g.edges.push_back({id(row, col, 1, k), id(row, col + 1, 1, k)});
            }
        }
    }
    g.normalize();
    return g;
}

namespace {

// standard pegasus offset lists (vertical u=0, horizontal u=1)
constexpr std::array<int, 12> kPegV = {2, 2, 2, 2, 10, 10, 10, 10, 6, 6, 6, 6};
constexpr std::array<int, 12> kPegH = {6, 6, 2, 2, 2, 2, 10, 10, 10, 10, 6, 6};

// a (u, w, k) track is outside the fabric when it has no internal couplers:
// k in {0,1} at w = 0 and k in {10,11} at w = m-1, both orientations
inline bool pegasusAlive(int m, int w, int k) {
    if (w == 0 && k < 2) return false;
    if (w == m - 1 && k >= 10) return false;
    return true;
}

} // namespace

EdgeSet pegasus(int m) {
    if (m < 2) throw std::invalid_argument("pegasus: m must be >= 2");
    const int m1 = m - 1;

    // dense ids for fabric qubits, lexicographic in (u, w, k, z)
    std::vector<int> id(static_cast<std::size_t>(2) * m * 12 * m1, -1);
    const auto raw = [m, m1](int u, int w, int k, int z) {
        return ((u * m + w) * 12 + k) * m1 + z;
    };
    int next_id = 0;
    for (int u = 0; u < 2; ++u) {
        for (int w = 0; w < m; ++w) {
            for (int k = 0; k < 12; ++k) {
                if (!pegasusAlive(m, w, k)) continue;
                for (int z = 0; z < m1; ++z) id[raw(u, w, k, z)] = next_id++;
            }
        }
    }

    EdgeSet g;
    g.num_vars = static_cast<Var>(next_id);
    g.label = "pegasus(" + std::to_string(m) + ")";
    const auto vid = [&](int u, int w, int k, int z) {
        return static_cast<Var>(id[raw(u, w, k, z)]);
    };

    for (int u = 0; u < 2; ++u) {
        for (int w = 0; w < m; ++w) {
            for (int k = 0; k < 12; ++k) {
                if (!pegasusAlive(m, w, k)) continue;
                // external couplers along the track
                for (int z = 0; z + 1 < m1; ++z) {
                    g.edges.push_back({vid(u, w, k, z), vid(u, w, k, z + 1)});
                }
                // odd couplers pair tracks 2j and 2j+1 (dead tracks come in
                // exactly these pairs, so both ends are alive together)
                if (k % 2 == 0) {
                    for (int z = 0; z < m1; ++z) {
                        g.edges.push_back({vid(u, w, k, z), vid(u, w, k + 1, z)});
                    }
                }
            }
        }
    }

    // internal couplers: vertical (0,w,k,z) meets horizontal (1,w',k',z')
    // with w' = z + [k' < V[k]] and z' = w - [k < H[k']]; range violations
    // at w = 0 / w = m-1 are exactly the boundary trims
    for (int w = 0; w < m; ++w) {
        for (int z = 0; z < m1; ++z) {
            for (int k = 0; k < 12; ++k) {
                for (int k2 = 0; k2 < 12; ++k2) {
                    const int w2 = z + (k2 < kPegV[k] ? 1 : 0);
                    const int z2 = w - (k < kPegH[k2] ? 1 : 0);
                    if (z2 < 0 || z2 >= m1) continue;
                    g.edges.push_back({vid(0, w, k, z), vid(1, w2, k2, z2)});
                }
            }
        }
    }
    g.normalize();
    return g;
}

EdgeSet zephyr(int m, int t) {
    if (m < 1 || t < 1) throw std::invalid_argument("zephyr: m and t must be >= 1");
    const int M = 2 * m + 1;
    const auto id = [M, t, m](int u, int w, int k, int j, int z) {
        return static_cast<Var>((((u * M + w) * t + k) * 2 + j) * m + z);
    };

    EdgeSet g;
    g.num_vars = static_cast<Var>(4 * t * m * M);
    g.label = t == 4 ? "zephyr(" + std::to_string(m) + ")"
                     : "zephyr(" + std::to_string(m) + ",t=" + std::to_string(t) + ")";

    for (int u = 0; u < 2; ++u) {
        for (int w = 0; w < M; ++w) {
            for (int k = 0; k < t; ++k) {
                // odd couplers: neighbours along the track (positions 2z+j)
                for (int z = 0; z < m; ++z) {
                    g.edges.push_back({id(u, w, k, 0, z), id(u, w, k, 1, z)});
                    if (z + 1 < m) g.edges.push_back({id(u, w, k, 1, z), id(u, w, k, 0, z + 1)});
                }
                // external couplers: positions two apart
                for (int j = 0; j < 2; ++j) {
                    for (int z = 0; z + 1 < m; ++z) {
                        g.edges.push_back({id(u, w, k, j, z), id(u, w, k, j, z + 1)});
                    }
                }
            }
        }
    }

    // internal couplers: vertical (0,w,k,j,z) spans rows {2z+j, 2z+j+1};
    // it crosses horizontals at those rows whose spans cover column w,
    // i.e. with position 2z'+j' in {w-1, w}
    for (int w = 0; w < M; ++w) {
        for (int k = 0; k < t; ++k) {
            for (int j = 0; j < 2; ++j) {
                for (int z = 0; z < m; ++z) {
                    for (int dw = 0; dw < 2; ++dw) {
                        const int w2 = 2 * z + j + dw;
                        for (int pos = w - 1; pos <= w; ++pos) {
                            if (pos < 0 || pos > 2 * m - 1) continue;
                            const int j2 = pos % 2, z2 = pos / 2;
                            for (int k2 = 0; k2 < t; ++k2) {
                                g.edges.push_back({id(0, w, k, j, z), id(1, w2, k2, j2, z2)});
                            }
                        }
                    }
                }
            }
        }
    }
    g.normalize();
    return g;
}

EdgeSet complete(int n) {
    if (n < 1) throw std::invalid_argument("complete: n must be >= 1");
    EdgeSet g;
    g.num_vars = static_cast<Var>(n);
    g.label = "complete(" + std::to_string(n) + ")";
    g.edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (Var i = 0; i + 1 < static_cast<Var>(n); ++i) {
        for (Var j = i + 1; j < static_cast<Var>(n); ++j) {
            g.edges.push_back({i, j});
        }
    }
    return g; // already canonical
}

EdgeSet randomGraph(int n, double p, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("randomGraph: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("randomGraph: p must lie in [0, 1]");
    }
    Rng rng(seed);
    EdgeSet g;
    g.num_vars = static_cast<Var>(n);
    {
        std::ostringstream lbl;
        lbl << "gnp(" << n << ',' << p << ",seed=" << seed << ')';
        g.label = lbl.str();
    }
    for (Var i = 0; i + 1 < static_cast<Var>(n); ++i) {
        for (Var j = i + 1; j < static_cast<Var>(n); ++j) {
            if (rng.uniform01() < p) g.edges.push_back({i, j});
        }
    }
    return g;
}

EdgeSet applyDefects(const EdgeSet& g, std::size_t node_kills, std::size_t edge_kills,
                     std::uint64_t seed) {
    std::vector<char> is_inactive(g.num_vars, 0);
    for (Var v : g.inactive) is_inactive[v] = 1;

    std::vector<Var> active;
    active.reserve(g.activeNodes());
    for (Var v = 0; v < g.num_vars; ++v) {
        if (!is_inactive[v]) active.push_back(v);
    }
    if (node_kills > active.size()) {
        throw std::out_of_range("applyDefects: more node kills than active nodes");
    }

    Rng rng(seed);
    // partial Fisher-Yates: the first node_kills entries become the victims
    for (std::size_t i = 0; i < node_kills; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(active.size() - i));
        std::swap(active[i], active[j]);
        is_inactive[active[i]] = 1;
    }

    std::vector<std::pair<Var, Var>> surviving;
    surviving.reserve(g.edges.size());
    for (const auto& e : g.edges) {
        if (!is_inactive[e.first] && !is_inactive[e.second]) surviving.push_back(e);
    }
    if (edge_kills > surviving.size()) {
        throw std::out_of_range("applyDefects: more edge kills than surviving edges");
    }
    for (std::size_t i = 0; i < edge_kills; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(surviving.size() - i));
        std::swap(surviving[i], surviving[j]);
    }
    surviving.erase(surviving.begin(), surviving.begin() + static_cast<long>(edge_kills));

    EdgeSet out;
    out.num_vars = g.num_vars;
    out.edges = std::move(surviving);
    {
        std::ostringstream lbl;
        lbl << g.label << "/defects(n=" << node_kills << ",e=" << edge_kills
            << ",seed=" << seed << ')';
        out.label = lbl.str();
    }
    for (Var v = 0; v < g.num_vars; ++v) {
        if (is_inactive[v]) out.inactive.push_back(v);
    }
    out.normalize();
    return out;
}

void writeEdgeList(const EdgeSet& g, std::ostream& out) {
    out << "n " << g.num_vars << '\n';
    for (const auto& [a, b] : g.edges) {
        out << a << ' ' << b << '\n';
    }
}

EdgeSet readEdgeList(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("edge list: empty input");
    {
        std::istringstream hs(line);
        std::string tag;
        long long n = -1;
        EdgeSet g;
        if (!(hs >> tag >> n) || tag != "n" || n < 0) {
            throw std::invalid_argument("edge list: malformed header");
        }
        g.num_vars = static_cast<Var>(n);
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            long long a = -1, b = -1;
            if (!(ls >> a >> b) || a < 0 || b < 0) {
                throw std::invalid_argument("edge list: malformed edge line");
            }
            std::string extra;
            if (ls >> extra) throw std::invalid_argument("edge list: trailing tokens");
            g.edges.push_back({static_cast<Var>(a), static_cast<Var>(b)});
        }
        g.normalize();
        return g;
    }
}

std::vector<std::size_t> degrees(const EdgeSet& g) {
    std::vector<std::size_t> deg(g.num_vars, 0);
    for (const auto& [a, b] : g.edges) {
        deg[a]++;
        deg[b]++;
    }
    return deg;
}

bool isConnected(const EdgeSet& g) {
    std::vector<char> is_inactive(g.num_vars, 0);
    for (Var v : g.inactive) is_inactive[v] = 1;

    std::vector<std::vector<Var>> adj(g.num_vars);
    for (const auto& [a, b] : g.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }

    Var start = g.num_vars;
    std::size_t n_active = 0;
    for (Var v = 0; v < g.num_vars; ++v) {
        if (!is_inactive[v]) {
            if (start == g.num_vars) start = v;
            ++n_active;
        }
    }
    if (n_active < 2) return true;

    std::vector<char> seen(g.num_vars, 0);
    std::vector<Var> queue{start};
    seen[start] = 1;
    std::size_t reached = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (Var w : adj[queue[head]]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                queue.push_back(w);
            }
        }
    }
    return reached == n_active;
}

} // namespace posiplant
