#include "posiplant/planting.hpp"

#include <algorithm>

#include "posiplant/rng.hpp"

namespace posiplant {

Clause excludeClause(Var i, Var j, std::pair<bool, bool> planted,
                     std::pair<bool, bool> excluded) {
    if (i == j) throw std::invalid_argument("excludeClause: needs two distinct variables");
    if (excluded == planted) {
        throw std::invalid_argument("excludeClause: cannot exclude the planted tuple");
    }
    // the clause is falsified exactly at the excluded tuple: each literal is
    // the complement of the excluded value
    return {Literal{i, excluded.first}, Literal{j, excluded.second}};
}

namespace {

void validate(const PlantingConfig& cfg) {
    if (cfg.num_vars == 0) throw ConfigError("plant: num_vars must be >= 1");
    if (cfg.planted.size() != cfg.num_vars) {
        throw ConfigError("plant: planted length must equal num_vars");
    }
    if (cfg.coefficient_pool.empty()) {
        throw ConfigError("plant: coefficient pool is empty");
    }
    for (double c : cfg.coefficient_pool) {
        if (!(c > 0.0)) throw ConfigError("plant: coefficients must be strictly positive");
    }
    if (cfg.edge_set) {
        const EdgeSet& g = *cfg.edge_set;
        if (g.num_vars != cfg.num_vars) {
            throw ConfigError("plant: edge set size does not match num_vars");
        }
        if (cfg.num_vars >= 2) {
            std::vector<char> covered(cfg.num_vars, 0);
            for (const auto& [a, b] : g.edges) covered[a] = covered[b] = 1;
            for (Var v = 0; v < cfg.num_vars; ++v) {
                if (!covered[v]) {
                    throw ConfigError("plant: edge set leaves variable " + std::to_string(v) +
                                      " uncovered; uniqueness is unreachable");
                }
            }
        }
    }
}

// enumeration order of the three non-planted tuples is fixed:
// (0,0),(0,1),(1,0),(1,1) minus the planted one
std::pair<bool, bool> excludedTuple(std::pair<bool, bool> planted, std::uint64_t choice) {
    static constexpr std::pair<bool, bool> all[4] = {
        {false, false}, {false, true}, {true, false}, {true, true}};
    std::uint64_t seen = 0;
    for (const auto& t : all) {
        if (t == planted) continue;
        if (seen == choice) return t;
        ++seen;
    }
    throw std::invalid_argument("excludedTuple: choice out of range");
}

PlantedInstance finish(const PlantingConfig& cfg, const TwoSatFormula& f, Rng& rng) {
    // coefficient assignment happens once, over the final clause multiset,
    // in insertion order; duplicate clauses accumulate
    Posiform p(cfg.num_vars);
    const auto& pool = cfg.coefficient_pool;
    for (const Clause& c : f.clauses()) {
        const double coeff = pool[rng.below(pool.size())];
        const Literal za = c.a.complement(), zb = c.b.complement();
        if (za == zb) {
            p.addLinear(za, coeff); // unit clause: c * ~z * ~z = c * ~z
        } else {
            p.addQuadratic(za, zb, coeff);
        }
    }

    PlantedInstance inst;
    inst.posiform = p;
    inst.qubo = toQubo(p);
    inst.planted = cfg.planted;
    inst.planted_energy = eval(inst.qubo, cfg.planted);
    inst.clause_count = f.clauses().size();
    inst.seed = cfg.seed;
    inst.edge_set_label =
        cfg.edge_set ? cfg.edge_set->label : "complete(" + std::to_string(cfg.num_vars) + ")";

    // every clause is satisfied at planted, so the posiform part vanishes
    // there and the QUBO energy (offset included) is exactly zero
    if (eval(p, cfg.planted) != p.offset() || inst.planted_energy != 0.0) {
        throw std::logic_error("plant: planted certificate violated");
    }
    return inst;
}

} // namespace

PlantedInstance plant(const PlantingConfig& cfg) {
    validate(cfg);
    const Var n = cfg.num_vars;
    Rng rng(cfg.seed);

    if (n == 1) {
        // no pairs exist; a single unit clause on the planted literal pins
        // the one variable
        TwoSatFormula f(1);
        const Literal keep{0, cfg.planted[0] == 0}; // true at the planted value
        f.addClause(keep, keep);
        if (!isUniquelySatisfiable(f, cfg.planted)) {
            throw std::logic_error("plant: unit clause failed to pin the variable");
        }
        return finish(cfg, f, rng);
    }

    const std::size_t batch = cfg.batch ? cfg.batch : n;
    const std::size_t step = std::max<std::size_t>(batch / 10, 1);
    const std::size_t max_clauses =
        cfg.max_clauses ? cfg.max_clauses : 100 * static_cast<std::size_t>(n);

    const std::vector<std::pair<Var, Var>>* edges =
        cfg.edge_set ? &cfg.edge_set->edges : nullptr;

    TwoSatFormula f(n);
    const Bitstring& planted = cfg.planted;

    // uniqueness bookkeeping: pinned variables stay pinned as clauses are
    // appended (the solution set only shrinks), so each scan resumes where
    // the previous one stopped; a known second solution short-circuits the
    // scan until some new clause kills it
    Var first_unpinned = 0;
    std::optional<Bitstring> second;
    std::size_t second_checked_upto = 0;

    auto uniqueAt = [&](std::size_t n_clauses) {
        if (second) {
            bool alive = true;
            for (std::size_t c = second_checked_upto; c < n_clauses; ++c) {
                if (!satisfies(f.clauses()[c], *second)) {
                    alive = false;
                    break;
                }
            }
            if (alive) {
                second_checked_upto = n_clauses;
                return false;
            }
            second.reset();
        }
        TwoSatSolver solver(f);
        second = findSecondSolution(solver, planted, first_unpinned);
        if (second) {
            // the scan stopped at the variable the solution flips; everything
            // before it is proven pinned
            for (Var v = first_unpinned; v < n; ++v) {
                if ((*second)[v] != planted[v]) {
                    first_unpinned = v;
                    break;
                }
            }
            second_checked_upto = n_clauses;
            return false;
        }
        return true;
    };

    std::size_t next_check = std::min(batch, max_clauses);
    while (true) {
        while (f.clauses().size() < next_check) {
            Var i, j;
            if (edges) {
                const auto& e = (*edges)[rng.below(edges->size())];
                i = e.first;
                j = e.second;
            } else {
                i = static_cast<Var>(rng.below(n));
                j = static_cast<Var>(rng.below(n - 1));
                if (j >= i) ++j;
                if (j < i) std::swap(i, j);
            }
            const std::pair<bool, bool> here{planted[i] != 0, planted[j] != 0};
            f.addClause(excludeClause(i, j, here, excludedTuple(here, rng.below(3))));
        }
        if (uniqueAt(f.clauses().size())) break;
        if (f.clauses().size() >= max_clauses) {
            throw SparseGraphError("plant: no unique solution after " +
                                   std::to_string(f.clauses().size()) +
                                   " clauses; the edge set is too sparse");
        }
        next_check = std::min(next_check + step, max_clauses);
    }

    return finish(cfg, f, rng);
}

CombineResult combine(double alpha1, const Qubo& q1, double alpha2,
                      const PlantedInstance& q2) {
    if (!(alpha1 > 0.0) || !(alpha2 > 0.0)) {
        throw std::invalid_argument("combine: weights must be strictly positive");
    }
    if (q1.numVars() != q2.qubo.numVars()) {
        throw std::invalid_argument("combine: dimension mismatch");
    }

    CombineResult r;
    r.minimizer_verified = q1.numVars() <= 24;
    if (r.minimizer_verified) {
        const BruteForceResult b = bruteForce(q1);
        if (eval(q1, q2.planted) != b.min_energy) {
            throw std::invalid_argument(
                "combine: q1 does not attain its minimum at the planted solution");
        }
    }

    Qubo out(q1.numVars());
    out.addOffset(alpha1 * q1.offset() + alpha2 * q2.qubo.offset());
    for (const auto& [i, v] : q1.linear()) out.addLinear(i, alpha1 * v);
    for (const auto& [i, v] : q2.qubo.linear()) out.addLinear(i, alpha2 * v);
    for (const auto& [k, v] : q1.quadratic()) out.addQuadratic(k.first, k.second, alpha1 * v);
    for (const auto& [k, v] : q2.qubo.quadratic()) {
        out.addQuadratic(k.first, k.second, alpha2 * v);
    }
    r.qubo = std::move(out);
    return r;
}

} // namespace posiplant
