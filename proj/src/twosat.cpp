#include "posiplant/twosat.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace posiplant {

namespace {

// literal node ids: 2v = ~x_v, 2v+1 = x_v. Complement is node^1. Putting
// the negative literal first makes the unconstrained default assignment
// all-zeros (its SCC pops first and wins the comparison).
inline int nodeOf(const Literal& z) {
    return static_cast<int>(2 * z.var) + (z.negated ? 0 : 1);
}

} // namespace

void TwoSatFormula::addClause(Clause c) {
    if (c.a.var >= num_vars_ || c.b.var >= num_vars_) {
        throw std::invalid_argument("clause variable out of range");
    }
    clauses_.push_back(c);
}

bool TwoSatFormula::satisfiedBy(const Bitstring& x) const {
    if (x.size() != num_vars_) {
        throw std::invalid_argument("assignment length does not match formula");
    }
    for (const Clause& c : clauses_) {
        if (!satisfies(c, x)) return false;
    }
    return true;
}

TwoSatSolver::TwoSatSolver(const TwoSatFormula& f) : num_vars_(f.numVars()) {
    const int n_nodes = static_cast<int>(2 * num_vars_);
    std::vector<int> degree(n_nodes, 0);
    for (const Clause& c : f.clauses()) {
        degree[nodeOf(c.a) ^ 1]++;
        if (!(c.a == c.b)) degree[nodeOf(c.b) ^ 1]++;
    }
    row_start_.assign(n_nodes + 1, 0);
    for (int v = 0; v < n_nodes; ++v) row_start_[v + 1] = row_start_[v] + degree[v];
    targets_.resize(row_start_[n_nodes]);
    std::vector<int> fill(row_start_.begin(), row_start_.end() - 1);
    for (const Clause& c : f.clauses()) {
        targets_[fill[nodeOf(c.a) ^ 1]++] = nodeOf(c.b);
        if (!(c.a == c.b)) targets_[fill[nodeOf(c.b) ^ 1]++] = nodeOf(c.a);
    }
}

std::optional<Bitstring> TwoSatSolver::solveForced(Literal must_hold) const {
    if (must_hold.var >= num_vars_) {
        throw std::invalid_argument("forced literal out of range");
    }
    const int to = nodeOf(must_hold);
    return run(to ^ 1, to);
}

std::optional<Bitstring> TwoSatSolver::run(int extra_from, int extra_to) const {
    const int n_nodes = static_cast<int>(2 * num_vars_);

    // iterative Tarjan; scc ids are assigned in pop order, i.e. reverse
    // topological order of the condensation
    std::vector<int> disc(n_nodes, -1), low(n_nodes, 0), scc(n_nodes, -1);
    std::vector<char> on_stack(n_nodes, 0);
    std::vector<int> stack;
    stack.reserve(n_nodes);

    struct Frame {
        int v;
        int edge;
    };
    std::vector<Frame> work;
    int timer = 0, scc_count = 0;

    for (int root = 0; root < n_nodes; ++root) {
        if (disc[root] != -1) continue;
        work.push_back({root, 0});
        while (!work.empty()) {
            Frame& fr = work.back();
            const int v = fr.v;
            if (fr.edge == 0) {
                disc[v] = low[v] = timer++;
                stack.push_back(v);
                on_stack[v] = 1;
            }
            const int deg = row_start_[v + 1] - row_start_[v];
            const int total = deg + (v == extra_from ? 1 : 0);
            if (fr.edge < total) {
                const int w = fr.edge < deg ? targets_[row_start_[v] + fr.edge] : extra_to;
                ++fr.edge;
                if (disc[w] == -1) {
                    work.push_back({w, 0}); // invalidates fr; re-acquired next iteration
                } else if (on_stack[w]) {
                    if (disc[w] < low[v]) low[v] = disc[w];
                }
            } else {
                work.pop_back();
                if (!work.empty()) {
                    const int parent = work.back().v;
                    if (low[v] < low[parent]) low[parent] = low[v];
                }
                if (low[v] == disc[v]) {
                    while (true) {
                        const int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        scc[w] = scc_count;
                        if (w == v) break;
                    }
                    ++scc_count;
                }
            }
        }
    }

    Bitstring x(num_vars_);
    for (Var v = 0; v < num_vars_; ++v) {
        const int neg = scc[2 * v], pos = scc[2 * v + 1];
        if (neg == pos) return std::nullopt;
        // a literal holds iff its SCC pops before its complement's
        x.bits[v] = pos < neg ? 1 : 0;
    }
    return x;
}

std::optional<Bitstring> solve(const TwoSatFormula& f) {
    return TwoSatSolver(f).solve();
}

std::optional<Bitstring> findSecondSolution(const TwoSatSolver& solver,
                                            const Bitstring& witness,
                                            Var start_var) {
    for (Var i = start_var; i < solver.numVars(); ++i) {
        // force x_i to the complement of the witness bit
        const Literal flipped{i, witness[i] != 0};
        if (auto sol = solver.solveForced(flipped)) return sol;
    }
    return std::nullopt;
}

bool isUniquelySatisfiable(const TwoSatFormula& f, const Bitstring& witness) {
    if (!f.satisfiedBy(witness)) {
        throw std::invalid_argument("isUniquelySatisfiable: witness violates the formula");
    }
    TwoSatSolver solver(f);
    return !findSecondSolution(solver, witness).has_value();
}

TwoSatCount bruteForceCount(const TwoSatFormula& f, int max_vars) {
    const int n = static_cast<int>(f.numVars());
    if (n > max_vars) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "bruteForceCount: %d variables exceeds cap %d", n, max_vars);
        throw std::invalid_argument(msg);
    }

    // x_0 is the most significant bit so ascending k enumerates assignments
    // in lexicographic order
    const std::size_t m = f.clauses().size();
    std::vector<int> sa(m), sb(m);
    std::vector<std::uint32_t> na(m), nb(m);
    for (std::size_t c = 0; c < m; ++c) {
        sa[c] = n - 1 - static_cast<int>(f.clauses()[c].a.var);
        na[c] = f.clauses()[c].a.negated ? 1u : 0u;
        sb[c] = n - 1 - static_cast<int>(f.clauses()[c].b.var);
        nb[c] = f.clauses()[c].b.negated ? 1u : 0u;
    }

    TwoSatCount r;
    const std::uint64_t total = n == 0 ? 1 : (std::uint64_t{1} << n);
    for (std::uint64_t k = 0; k < total; ++k) {
        bool sat = true;
        for (std::size_t c = 0; c < m; ++c) {
            if ((((k >> sa[c]) & 1) ^ na[c]) == 0 && (((k >> sb[c]) & 1) ^ nb[c]) == 0) {
                sat = false;
                break;
            }
        }
        if (!sat) continue;
        ++r.count;
        Bitstring x(n);
        for (int i = 0; i < n; ++i) x.bits[i] = (k >> (n - 1 - i)) & 1;
        r.solutions.push_back(std::move(x));
    }
    return r;
}

TwoSatFormula posiformToTwoSat(const Posiform& p) {
    TwoSatFormula f(p.numVars());
    for (const auto& [z, b] : p.linear()) {
        (void)b;
        f.addClause(z.complement(), z.complement());
    }
    for (const auto& [key, b] : p.quadratic()) {
        (void)b;
        f.addClause(key.first.complement(), key.second.complement());
    }
    return f;
}

void writeDimacs(const TwoSatFormula& f, std::ostream& out) {
    out << "p cnf " << f.numVars() << ' ' << f.clauses().size() << '\n';
    auto lit = [](const Literal& z) {
        const long long v = static_cast<long long>(z.var) + 1;
        return z.negated ? -v : v;
    };
    for (const Clause& c : f.clauses()) {
        out << lit(c.a) << ' ' << lit(c.b) << " 0\n";
    }
}

TwoSatFormula readDimacs(std::istream& in) {
    std::string line;
    long long nvars = -1, nclauses = -1;
    std::vector<long long> pending;
    std::vector<Clause> clauses;

    auto flush = [&](long long v) {
        if (v == 0) {
            if (pending.empty() || pending.size() > 2) {
                throw std::invalid_argument("dimacs: clauses must have one or two literals");
            }
            auto mk = [&](long long l) {
                const long long var = (l < 0 ? -l : l) - 1;
                if (var < 0 || var >= nvars) {
                    throw std::invalid_argument("dimacs: literal out of range");
                }
                return Literal{static_cast<Var>(var), l < 0};
            };
            const Literal a = mk(pending[0]);
            const Literal b = pending.size() == 2 ? mk(pending[1]) : a;
            clauses.push_back({a, b});
            pending.clear();
        } else {
            pending.push_back(v);
        }
    };

    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == 'p') {
            std::istringstream ls(line);
            std::string p, fmt;
            if (!(ls >> p >> fmt >> nvars >> nclauses) || fmt != "cnf" || nvars < 0) {
                throw std::invalid_argument("dimacs: malformed problem line");
            }
            continue;
        }
        if (nvars < 0) throw std::invalid_argument("dimacs: clause before problem line");
        std::istringstream ls(line);
        long long v;
        while (ls >> v) flush(v);
    }
    if (!pending.empty()) throw std::invalid_argument("dimacs: unterminated clause");
    if (nvars < 0) throw std::invalid_argument("dimacs: missing problem line");
    if (nclauses >= 0 && static_cast<long long>(clauses.size()) != nclauses) {
        throw std::invalid_argument("dimacs: clause count mismatch");
    }

    TwoSatFormula f(static_cast<Var>(nvars));
    for (const Clause& c : clauses) f.addClause(c);
    return f;
}

} // namespace posiplant
