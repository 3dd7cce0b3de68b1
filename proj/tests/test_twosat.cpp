#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>

#include "posiplant/twosat.hpp"

using namespace posiplant;

namespace {

Bitstring bitsOf(std::uint32_t k, std::size_t n) {
    Bitstring b(n);
    for (std::size_t i = 0; i < n; ++i) b.set(i, (k >> i) & 1u);
    return b;
}

// The six-clause formula whose unique solution is (1,0,1).
TwoSatFormula sixClauseFormula() {
    TwoSatFormula f(3);
    f.addClause(Literal{1, true}, Literal{2, true});
    f.addClause(Literal{0, false}, Literal{1, true});
    f.addClause(Literal{0, false}, Literal{2, true});
    f.addClause(Literal{0, false}, Literal{1, false});
    f.addClause(Literal{1, true}, Literal{2, false});
    f.addClause(Literal{0, true}, Literal{2, false});
    return f;
}

TwoSatFormula randomFormula(std::mt19937& gen, Var max_n, int max_m) {
    const Var n = 1 + static_cast<Var>(gen() % max_n);
    const int m = static_cast<int>(gen() % static_cast<unsigned>(max_m + 1));
    TwoSatFormula f(n);
    for (int c = 0; c < m; ++c) {
        const Literal a{static_cast<Var>(gen() % n), (gen() & 1) != 0};
        const Literal b{static_cast<Var>(gen() % n), (gen() & 1) != 0};
        if ((gen() % 8) == 0) {
            f.addClause(a, a); // occasional unit clause
        } else {
            f.addClause(a, b);
        }
    }
    return f;
}

} // namespace

TEST_CASE("six-clause formula has the unique solution 101") {
    const TwoSatFormula f = sixClauseFormula();
    const auto x = solve(f);
    REQUIRE(x.has_value());
    CHECK(*x == Bitstring::fromString("101"));
    CHECK(f.satisfiedBy(*x));
    CHECK(isUniquelySatisfiable(f, *x));

    const TwoSatCount count = bruteForceCount(f);
    CHECK(count.count == 1);
    REQUIRE(count.solutions.size() == 1);
    CHECK(count.solutions[0] == Bitstring::fromString("101"));
}

TEST_CASE("empty formula solves to all zeros") {
    const TwoSatFormula f(3);
    const auto x = solve(f);
    REQUIRE(x.has_value());
    CHECK(*x == Bitstring::fromString("000"));
    CHECK_FALSE(isUniquelySatisfiable(f, *x));
}

TEST_CASE("contradictions are unsatisfiable") {
    TwoSatFormula units(1);
    units.addClause(Literal{0, false}, Literal{0, false});
    units.addClause(Literal{0, true}, Literal{0, true});
    CHECK_FALSE(solve(units).has_value());

    TwoSatFormula f(2);
    f.addClause(Literal{0, false}, Literal{1, false});
    f.addClause(Literal{0, false}, Literal{1, true});
    f.addClause(Literal{0, true}, Literal{1, false});
    f.addClause(Literal{0, true}, Literal{1, true});
    CHECK_FALSE(solve(f).has_value());
    CHECK(bruteForceCount(f).count == 0);
}

TEST_CASE("clause validation and satisfiedBy") {
    TwoSatFormula f(2);
    CHECK_THROWS_AS(f.addClause(Literal{2, false}, Literal{0, false}),
                    std::invalid_argument);
    f.addClause(Literal{0, false}, Literal{1, true});
    CHECK(f.satisfiedBy(Bitstring::fromString("10")));
    CHECK(f.satisfiedBy(Bitstring::fromString("00")));
    CHECK_FALSE(f.satisfiedBy(Bitstring::fromString("01")));
}

TEST_CASE("forced solve pins a literal") {
    TwoSatFormula f(2);
    f.addClause(Literal{0, false}, Literal{1, false}); // x0 or x1
    const TwoSatSolver solver(f);

    const auto a = solver.solveForced(Literal{0, true}); // force x0 = 0
    REQUIRE(a.has_value());
    CHECK((*a)[0] == 0);
    CHECK((*a)[1] == 1);

    const auto b = solver.solveForced(Literal{0, false}); // force x0 = 1
    REQUIRE(b.has_value());
    CHECK((*b)[0] == 1);

    TwoSatFormula pinned(1);
    pinned.addClause(Literal{0, false}, Literal{0, false});
    const TwoSatSolver psolver(pinned);
    CHECK_FALSE(psolver.solveForced(Literal{0, true}).has_value());
}

TEST_CASE("solver agrees with exhaustive counting on random formulas") {
    std::mt19937 gen(424242);
    for (int rep = 0; rep < 2000; ++rep) {
        const TwoSatFormula f = randomFormula(gen, 10, 30);
        const TwoSatCount count = bruteForceCount(f);
        const auto x = solve(f);
        CHECK(x.has_value() == (count.count > 0));
        if (!x.has_value()) continue;

        CHECK(f.satisfiedBy(*x));
        CHECK(isUniquelySatisfiable(f, *x) == (count.count == 1));

        const TwoSatSolver solver(f);
        const auto second = findSecondSolution(solver, *x);
        CHECK(second.has_value() == (count.count > 1));
        if (second.has_value()) {
            CHECK(f.satisfiedBy(*second));
            CHECK(*second != *x);
        }
    }
}

TEST_CASE("second solutions respect the start variable") {
    // two free variables: solutions are all four assignments
    const TwoSatFormula f(2);
    const TwoSatSolver solver(f);
    const Bitstring w = Bitstring::fromString("00");
    const auto s0 = findSecondSolution(solver, w, 0);
    REQUIRE(s0.has_value());
    CHECK((*s0)[0] == 1);
    const auto s1 = findSecondSolution(solver, w, 1);
    REQUIRE(s1.has_value());
    CHECK((*s1)[1] == 1);
    CHECK_FALSE(findSecondSolution(solver, w, 2).has_value());
}

TEST_CASE("uniqueness check rejects non-witnesses") {
    const TwoSatFormula f = sixClauseFormula();
    CHECK_THROWS_AS(isUniquelySatisfiable(f, Bitstring::fromString("111")),
                    std::invalid_argument);
}

TEST_CASE("posiform maps to an equivalent formula") {
    std::mt19937 gen(31337);
    std::uniform_int_distribution<int> coeff(1, 3);
    for (int rep = 0; rep < 200; ++rep) {
        const Var n = 1 + static_cast<Var>(gen() % 10);
        Posiform p(n);
        const int terms = static_cast<int>(gen() % 12);
        for (int t = 0; t < terms; ++t) {
            const Var i = static_cast<Var>(gen() % n);
            const Var j = static_cast<Var>(gen() % n);
            if (i == j) {
                p.addLinear(Literal{i, (gen() & 1) != 0}, coeff(gen));
            } else {
                p.addQuadratic(Literal{i, (gen() & 1) != 0},
                               Literal{j, (gen() & 1) != 0}, coeff(gen));
            }
        }
        const TwoSatFormula f = posiformToTwoSat(p);
        CHECK(f.numVars() == n);
        for (std::uint32_t k = 0; k < (1u << n); ++k) {
            const Bitstring x = bitsOf(k, n);
            CHECK(f.satisfiedBy(x) == (eval(p, x) - p.offset() == 0.0));
        }
    }
}

TEST_CASE("dimacs round trip") {
    TwoSatFormula f(4);
    f.addClause(Literal{0, false}, Literal{3, true});
    f.addClause(Literal{1, true}, Literal{1, true}); // unit
    f.addClause(Literal{2, false}, Literal{1, false});

    std::ostringstream out;
    writeDimacs(f, out);
    std::istringstream in(out.str());
    const TwoSatFormula g = readDimacs(in);
    CHECK(g.numVars() == f.numVars());
    CHECK(g.clauses() == f.clauses());

    std::istringstream bad1("p cnf 2 1\n1 2 3 0\n");
    CHECK_THROWS_AS(readDimacs(bad1), std::invalid_argument);
    std::istringstream bad2("p cnf 2 2\n1 2 0\n");
    CHECK_THROWS_AS(readDimacs(bad2), std::invalid_argument);
    std::istringstream bad3("not a header\n");
    CHECK_THROWS_AS(readDimacs(bad3), std::invalid_argument);
}

TEST_CASE("solve cost grows linearly in formula size") {
    // Satisfiable chains (~x_i or x_{i+1}) plus random extra clauses; doubling
    // n and m should roughly double solve time. A quadratic solver would
    // quadruple it; allow generous noise slack below that.
    auto build = [](Var n, std::uint64_t seed) {
        std::mt19937_64 gen(seed);
        TwoSatFormula f(n);
        for (Var i = 0; i + 1 < n; ++i)
            f.addClause(Literal{i, true}, Literal{i + 1, false});
        for (Var c = 0; c < n; ++c) {
            const Var i = static_cast<Var>(gen() % n);
            const Var j = static_cast<Var>(gen() % n);
            f.addClause(Literal{i, false}, Literal{j, (gen() & 1) != 0});
        }
        return f;
    };
    auto time_solve = [](const TwoSatFormula& f) {
        const TwoSatSolver solver(f);
        double best = 1e100;
        for (int rep = 0; rep < 5; ++rep) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto x = solver.solve();
            const auto t1 = std::chrono::steady_clock::now();
            CHECK(x.has_value());
            best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
        }
        return best;
    };
    const double small = time_solve(build(250000, 5));
    const double large = time_solve(build(500000, 6));
    CHECK(large / small < 3.2);
}
