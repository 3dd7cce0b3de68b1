#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "posiplant/model.hpp"

namespace posiplant {

// Disjunction (a OR b). Unit clauses are stored with a == b.
struct Clause {
    Literal a, b;

    friend auto operator<=>(const Clause&, const Clause&) = default;
};

inline bool satisfies(const Clause& c, const Bitstring& x) {
    return evalLiteral(c.a, x) != 0.0 || evalLiteral(c.b, x) != 0.0;
}

class TwoSatFormula {
public:
    TwoSatFormula() = default;
    explicit TwoSatFormula(Var num_vars) : num_vars_(num_vars) {}

    Var numVars() const { return num_vars_; }
    const std::vector<Clause>& clauses() const { return clauses_; }

    void addClause(Clause c);
    void addClause(Literal a, Literal b) { addClause(Clause{a, b}); }

    bool satisfiedBy(const Bitstring& x) const;

private:
    Var num_vars_ = 0;
    std::vector<Clause> clauses_;
};

// Aspvall-Plass-Tarjan solver. The implication graph (clause (a or b) gives
// edges ~a -> b and ~b -> a) is built once as CSR; each solve runs one
// iterative Tarjan SCC pass, O(n + m). Forcing "x_i = v" for the uniqueness
// test is a single virtual edge threaded through the pass, so the graph is
// never rebuilt.
class TwoSatSolver {
public:
    explicit TwoSatSolver(const TwoSatFormula& f);

    Var numVars() const { return num_vars_; }

    std::optional<Bitstring> solve() const { return run(-1, -1); }

    // Solves f AND (must_hold), i.e. with the unit clause on must_hold.
    std::optional<Bitstring> solveForced(Literal must_hold) const;

private:
    std::optional<Bitstring> run(int extra_from, int extra_to) const;

    Var num_vars_ = 0;
    std::vector<int> row_start_; // CSR over 2*num_vars literal nodes
    std::vector<int> targets_;
};

// Satisfying assignment, or nullopt when unsatisfiable. With no constraints
// on a variable the all-false choice wins, so the empty formula yields the
// all-zeros assignment.
std::optional<Bitstring> solve(const TwoSatFormula& f);

// Scans variables start_var..n-1 and returns the first satisfying assignment
// that differs from witness on the scanned variable (solving f AND x_i !=
// witness_i), or nullopt when every such formula is unsatisfiable. With
// start_var 0 a nullopt result certifies witness is the only solution.
std::optional<Bitstring> findSecondSolution(const TwoSatSolver& solver,
                                            const Bitstring& witness,
                                            Var start_var = 0);

// True iff witness is the unique satisfying assignment: for each variable i
// the formula f AND (x_i = 1 - witness_i) must be unsatisfiable. Throws
// std::invalid_argument when witness does not satisfy f.
bool isUniquelySatisfiable(const TwoSatFormula& f, const Bitstring& witness);

struct TwoSatCount {
    std::uint64_t count = 0;
    std::vector<Bitstring> solutions; // lexicographic order
};

// Exhaustive model counting for cross-checking the solver; cap as in
// bruteForce.
TwoSatCount bruteForceCount(const TwoSatFormula& f, int max_vars = 24);

// Quadratic term b*z*z' becomes clause (~z or ~z'); linear term b*z becomes
// the unit clause (~z or ~z). The result is satisfied by x exactly when
// eval(p, x) - p.offset() == 0.
TwoSatFormula posiformToTwoSat(const Posiform& p);

// DIMACS CNF with 1-based signed literals; unit clauses are written with
// the literal repeated. Reading accepts one- and two-literal clauses only.
void writeDimacs(const TwoSatFormula& f, std::ostream& out);
TwoSatFormula readDimacs(std::istream& in);

} // namespace posiplant
