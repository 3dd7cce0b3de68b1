#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>

#include "posiplant/planting.hpp"

using namespace posiplant;

namespace {

Bitstring bitsOf(std::uint32_t k, std::size_t n) {
    Bitstring b(n);
    for (std::size_t i = 0; i < n; ++i) b.set(i, (k >> i) & 1u);
    return b;
}

// the full planted-instance contract for brute-forcible sizes
void checkPlanted(const PlantedInstance& inst) {
    REQUIRE(inst.planted.size() == inst.qubo.numVars());
    CHECK(inst.planted_energy == 0.0);
    CHECK(eval(inst.qubo, inst.planted) == 0.0);

    // the posiform certificate: zero offset, strictly positive terms, every
    // term vanishing at the planted point
    CHECK(inst.posiform.offset() == 0.0);
    CHECK(eval(inst.posiform, inst.planted) == 0.0);
    for (const auto& [z, c] : inst.posiform.linear()) {
        CHECK(c > 0.0);
        CHECK(evalLiteral(z, inst.planted) == 0.0);
    }
    for (const auto& [zz, c] : inst.posiform.quadratic()) {
        CHECK(c > 0.0);
        CHECK(evalLiteral(zz.first, inst.planted) * evalLiteral(zz.second, inst.planted) ==
              0.0);
    }
    CHECK(toQubo(inst.posiform) == inst.qubo);

    if (inst.qubo.numVars() <= 16) {
        const BruteForceResult b = bruteForce(inst.qubo);
        CHECK(b.min_energy == 0.0);
        REQUIRE(b.minimizers.size() == 1);
        CHECK(b.minimizers[0] == inst.planted);
    }
}

} // namespace

TEST_CASE("exclusion clauses forbid exactly the excluded tuple") {
    for (int pi = 0; pi < 2; ++pi) {
        for (int pj = 0; pj < 2; ++pj) {
            const std::pair<bool, bool> planted{pi != 0, pj != 0};
            for (int ei = 0; ei < 2; ++ei) {
                for (int ej = 0; ej < 2; ++ej) {
                    const std::pair<bool, bool> excluded{ei != 0, ej != 0};
                    if (excluded == planted) {
                        CHECK_THROWS_AS(excludeClause(0, 1, planted, excluded),
                                        std::invalid_argument);
                        continue;
                    }
                    const Clause c = excludeClause(0, 1, planted, excluded);
                    CHECK(c.a == Literal{0, excluded.first});
                    CHECK(c.b == Literal{1, excluded.second});
                    for (std::uint32_t k = 0; k < 4; ++k) {
                        const Bitstring x = bitsOf(k, 2);
                        const bool is_excluded =
                            (x[0] != 0) == excluded.first && (x[1] != 0) == excluded.second;
                        CHECK(satisfies(c, x) == !is_excluded);
                        if ((x[0] != 0) == planted.first && (x[1] != 0) == planted.second)
                            CHECK(satisfies(c, x));
                    }
                }
            }
        }
    }
    CHECK_THROWS_AS(excludeClause(2, 2, {false, false}, {true, true}),
                    std::invalid_argument);
}

TEST_CASE("the unit-coefficient seed reproducing the six-clause example") {
    PlantingConfig cfg;
    cfg.num_vars = 3;
    cfg.planted = Bitstring::fromString("101");
    cfg.coefficient_pool = {1.0};
    cfg.seed = 485;
    const PlantedInstance inst = plant(cfg);

    CHECK(inst.clause_count == 6);
    Posiform want(3);
    want.addQuadratic(Literal{1, false}, Literal{2, false}, 1.0);
    want.addQuadratic(Literal{0, true}, Literal{1, false}, 1.0);
    want.addQuadratic(Literal{0, true}, Literal{2, false}, 1.0);
    want.addQuadratic(Literal{0, true}, Literal{1, true}, 1.0);
    want.addQuadratic(Literal{1, false}, Literal{2, true}, 1.0);
    want.addQuadratic(Literal{0, false}, Literal{2, true}, 1.0);
    CHECK(inst.posiform == want);

    // expands to offset 1 + x2 + x3 - 2 x1 x3 with unique minimizer (1,0,1)
    CHECK(inst.qubo.offset() == 1.0);
    CHECK(inst.qubo.linearAt(0) == 0.0);
    CHECK(inst.qubo.linearAt(1) == 1.0);
    CHECK(inst.qubo.linearAt(2) == 1.0);
    CHECK(inst.qubo.quadraticAt(0, 2) == -2.0);
    CHECK(inst.qubo.quadratic().size() == 1);
    checkPlanted(inst);

    // stripping the offset gives the bare polynomial whose minimum is -1
    Qubo bare = inst.qubo;
    bare.addOffset(-inst.qubo.offset());
    const BruteForceResult b = bruteForce(bare);
    CHECK(b.min_energy == -1.0);
    REQUIRE(b.minimizers.size() == 1);
    CHECK(b.minimizers[0] == Bitstring::fromString("101"));
}

TEST_CASE("single-variable instances are one unit clause") {
    for (const char* bits : {"0", "1"}) {
        PlantingConfig cfg;
        cfg.num_vars = 1;
        cfg.planted = Bitstring::fromString(bits);
        cfg.seed = 11;
        const PlantedInstance inst = plant(cfg);
        CHECK(inst.clause_count == 1);
        CHECK(inst.posiform.linear().size() == 1);
        CHECK(inst.posiform.quadratic().empty());
        checkPlanted(inst);
    }
}

TEST_CASE("two-variable planting needs all three exclusions") {
    PlantingConfig cfg;
    cfg.num_vars = 2;
    cfg.planted = Bitstring::fromString("00");
    cfg.coefficient_pool = {1.0};
    cfg.seed = 3;
    const PlantedInstance inst = plant(cfg);
    // each clause forbids one tuple; three non-planted tuples must die
    CHECK(inst.clause_count >= 3);
    checkPlanted(inst);
}

TEST_CASE("random small configurations plant uniquely") {
    std::mt19937 gen(8881);
    for (int rep = 0; rep < 60; ++rep) {
        const Var n = 2 + static_cast<Var>(gen() % 13);
        PlantingConfig cfg;
        cfg.num_vars = n;
        Bitstring planted(n);
        for (Var i = 0; i < n; ++i) planted.set(i, (gen() & 1) != 0);
        cfg.planted = planted;
        cfg.seed = gen();
        switch (rep % 3) {
        case 0: break; // complete connectivity via absent edge set
        case 1: {
            EdgeSet g = randomGraph(static_cast<int>(n), 0.7, gen());
            const auto deg = degrees(g);
            bool covered = true;
            for (const auto d : deg) covered = covered && d > 0;
            if (!covered) continue; // sparse accident; coverage errors tested separately
            cfg.edge_set = std::move(g);
            break;
        }
        case 2:
            cfg.coefficient_pool = {1.0, 2.0, 3.0};
            cfg.batch = 1 + gen() % 5;
            break;
        }
        const PlantedInstance inst = plant(cfg);
        CHECK(inst.seed == cfg.seed);
        checkPlanted(inst);
    }
}

TEST_CASE("instances respect the connectivity graph") {
    EdgeSet g = chimera(2, 2);
    PlantingConfig cfg;
    cfg.num_vars = g.num_vars;
    cfg.planted = Bitstring(g.num_vars);
    for (Var i = 0; i < g.num_vars; ++i) cfg.planted.set(i, i % 3 == 0);
    cfg.edge_set = g;
    cfg.seed = 17;
    const PlantedInstance inst = plant(cfg);
    CHECK(inst.edge_set_label == g.label);
    checkPlanted(inst);

    std::set<std::pair<Var, Var>> allowed(g.edges.begin(), g.edges.end());
    for (const auto& [ij, v] : inst.qubo.quadratic()) {
        CHECK(allowed.count(ij) == 1);
    }
    for (const auto& [zz, c] : inst.posiform.quadratic()) {
        std::pair<Var, Var> key{zz.first.var, zz.second.var};
        if (key.second < key.first) std::swap(key.first, key.second);
        CHECK(allowed.count(key) == 1);
    }
}

TEST_CASE("coefficient pools shape the posiform") {
    PlantingConfig cfg;
    cfg.num_vars = 6;
    cfg.planted = Bitstring::fromString("010101");
    cfg.seed = 5;

    cfg.coefficient_pool = {2.0};
    const PlantedInstance even = plant(cfg);
    for (const auto& [z, c] : even.posiform.linear()) {
        CHECK(c >= 2.0);
        CHECK(std::fmod(c, 2.0) == 0.0);
    }
    for (const auto& [zz, c] : even.posiform.quadratic()) {
        CHECK(c >= 2.0);
        CHECK(std::fmod(c, 2.0) == 0.0);
    }

    cfg.coefficient_pool = {1.0, 2.0};
    const PlantedInstance mixed = plant(cfg);
    double total = 0.0;
    for (const auto& [z, c] : mixed.posiform.linear()) total += c;
    for (const auto& [zz, c] : mixed.posiform.quadratic()) total += c;
    // duplicate clauses accumulate, so the total pool mass equals the sum of
    // one draw per clause: between 1x and 2x the clause count
    CHECK(total >= static_cast<double>(mixed.clause_count));
    CHECK(total <= 2.0 * static_cast<double>(mixed.clause_count));
}

TEST_CASE("planting is a pure function of the config") {
    PlantingConfig cfg;
    cfg.num_vars = 12;
    cfg.planted = Bitstring::fromString("110010101100");
    cfg.seed = 20260816;
    const PlantedInstance a = plant(cfg);
    const PlantedInstance b = plant(cfg);
    CHECK(a.qubo == b.qubo);
    CHECK(a.posiform == b.posiform);
    CHECK(a.clause_count == b.clause_count);

    cfg.seed = 20260817;
    const PlantedInstance c = plant(cfg);
    CHECK(a.qubo != c.qubo);
}

TEST_CASE("frozen regression anchor for the generation stream") {
    // Pins the sampling order (edge draw, then excluded-tuple draw, then
    // per-clause coefficients on success) and the checkpoint schedule. Any
    // intentional change to the stream must update these constants and is a
    // format break for seed reproducibility.
    PlantingConfig cfg;
    cfg.num_vars = 3;
    cfg.planted = Bitstring::fromString("101");
    cfg.coefficient_pool = {1.0};
    cfg.seed = 0;
    const PlantedInstance inst = plant(cfg);
    CHECK(inst.clause_count == 13);
    CHECK(inst.qubo.offset() == 10.0);
    CHECK(inst.qubo.linearAt(0) == -6.0);
    CHECK(inst.qubo.linearAt(1) == -8.0);
    CHECK(inst.qubo.linearAt(2) == -4.0);
    CHECK(inst.qubo.quadraticAt(0, 1) == 5.0);
    CHECK(inst.qubo.quadraticAt(1, 2) == 4.0);
    CHECK(inst.qubo.quadratic().size() == 2);
    checkPlanted(inst);
}

TEST_CASE("invalid configurations are rejected") {
    PlantingConfig cfg;
    cfg.num_vars = 0;
    CHECK_THROWS_AS(plant(cfg), ConfigError);

    cfg.num_vars = 3;
    cfg.planted = Bitstring::fromString("10"); // wrong length
    CHECK_THROWS_AS(plant(cfg), ConfigError);

    cfg.planted = Bitstring::fromString("101");
    cfg.coefficient_pool = {};
    CHECK_THROWS_AS(plant(cfg), ConfigError);
    cfg.coefficient_pool = {1.0, 0.0};
    CHECK_THROWS_AS(plant(cfg), ConfigError);
    cfg.coefficient_pool = {1.0, -2.0};
    CHECK_THROWS_AS(plant(cfg), ConfigError);
    cfg.coefficient_pool = {1.0};

    EdgeSet wrong = complete(4); // num_vars mismatch
    cfg.edge_set = wrong;
    CHECK_THROWS_AS(plant(cfg), ConfigError);

    EdgeSet uncovered;
    uncovered.num_vars = 3;
    uncovered.edges = {{0, 1}}; // variable 2 untouched
    cfg.edge_set = uncovered;
    CHECK_THROWS_AS(plant(cfg), ConfigError);
}

TEST_CASE("sparse graphs that cannot pin the solution raise") {
    PlantingConfig cfg;
    cfg.num_vars = 8;
    cfg.planted = Bitstring::fromString("10101010");
    cfg.seed = 2;
    cfg.max_clauses = 2; // two clauses cannot constrain eight variables
    CHECK_THROWS_AS(plant(cfg), SparseGraphError);

    // a path graph is 2-SAT-plantable, so generous budgets succeed
    EdgeSet path;
    path.num_vars = 8;
    for (Var i = 0; i + 1 < 8; ++i) path.edges.push_back({i, i + 1});
    cfg.edge_set = path;
    cfg.max_clauses = 0;
    const PlantedInstance inst = plant(cfg);
    checkPlanted(inst);
}

TEST_CASE("combining a compatible qubo keeps the planted optimum") {
    PlantingConfig cfg;
    cfg.num_vars = 4;
    cfg.planted = Bitstring::fromString("1010");
    cfg.seed = 77;
    const PlantedInstance inst = plant(cfg);

    // q1 uniquely minimized at the planted point: -x0 + x1 - x2 + x3
    Qubo q1(4);
    q1.addLinear(0, -1.0);
    q1.addLinear(1, 1.0);
    q1.addLinear(2, -1.0);
    q1.addLinear(3, 1.0);

    const CombineResult r = combine(2.0, q1, 3.0, inst);
    CHECK(r.minimizer_verified);
    const BruteForceResult b = bruteForce(r.qubo);
    CHECK(b.min_energy == 2.0 * -2.0);
    REQUIRE(b.minimizers.size() == 1);
    CHECK(b.minimizers[0] == inst.planted);

    // coefficient-wise merge
    CHECK(r.qubo.linearAt(0) == 2.0 * -1.0 + 3.0 * inst.qubo.linearAt(0));
    CHECK(r.qubo.offset() == 3.0 * inst.qubo.offset());

    // a q1 whose minimum avoids the planted point is rejected
    Qubo hostile(4);
    hostile.addLinear(0, 1.0); // pushes x0 to 0, planted has x0 = 1
    CHECK_THROWS_AS(combine(1.0, hostile, 1.0, inst), std::invalid_argument);

    // dimension and sign validation
    CHECK_THROWS_AS(combine(1.0, Qubo(3), 1.0, inst), std::invalid_argument);
    CHECK_THROWS_AS(combine(0.0, q1, 1.0, inst), std::invalid_argument);
    CHECK_THROWS_AS(combine(1.0, q1, -1.0, inst), std::invalid_argument);
}

TEST_CASE("combining beyond the brute-force cap is flagged unverified") {
    PlantingConfig cfg;
    cfg.num_vars = 30;
    cfg.planted = Bitstring(30);
    for (Var i = 0; i < 30; ++i) cfg.planted.set(i, i % 2 == 0);
    cfg.seed = 13;
    const PlantedInstance inst = plant(cfg);

    const Qubo zero(30);
    const CombineResult r = combine(1.0, zero, 2.0, inst);
    CHECK_FALSE(r.minimizer_verified);
    CHECK(r.qubo.offset() == 2.0 * inst.qubo.offset());
    CHECK(eval(r.qubo, inst.planted) == 0.0);
}
