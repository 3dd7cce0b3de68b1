#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "posiplant/model.hpp"
#include "posiplant/topology.hpp"
#include "posiplant/twosat.hpp"

namespace posiplant {

// Planting could not reach a unique solution within max_clauses (the edge
// set is too sparse for the requested target).
class SparseGraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct PlantingConfig {
    Var num_vars = 0;
    Bitstring planted;                         // required, length num_vars
    std::optional<EdgeSet> edge_set;           // absent = all pairs allowed
    std::vector<double> coefficient_pool = {1.0, 2.0};
    std::uint64_t seed = 0;
    std::size_t batch = 0;                     // 0 -> num_vars
    std::size_t max_clauses = 0;               // 0 -> 100 * num_vars
};

struct PlantedInstance {
    Qubo qubo;
    Posiform posiform;       // offset 0; vanishes exactly at planted
    Bitstring planted;
    double planted_energy = 0.0; // eval(qubo, planted), always exactly 0
    std::size_t clause_count = 0;
    std::uint64_t seed = 0;
    std::string edge_set_label;
};

// Clause excluding the tuple (x_i, x_j) = excluded for a pair planted as
// `planted`:
//   (0,0) -> (x_i | x_j)     (0,1) -> (x_i | ~x_j)
//   (1,0) -> (~x_i | x_j)    (1,1) -> (~x_i | ~x_j)
// Throws std::invalid_argument when excluded == planted (the planted tuple
// must stay satisfying) or i == j.
Clause excludeClause(Var i, Var j, std::pair<bool, bool> planted,
                     std::pair<bool, bool> excluded);

// Random posiform with a provably unique minimum at cfg.planted:
// repeatedly samples an allowed pair (uniform, with replacement) and one of
// the three excluded tuples, appending the exclusion clause; after an
// initial batch of B clauses, uniqueness of the planted solution is checked
// every max(B/10, 1) clauses via the 2-SAT solver. On success every clause
// occurrence gets a coefficient drawn uniformly from the pool (duplicate
// clauses accumulate) and the posiform is converted to a QUBO. Deterministic
// function of the config including the seed.
//
// Throws ConfigError for invalid configs (empty/zero-size, length mismatch,
// non-positive pool entries, edge sets that leave a variable uncovered) and
// SparseGraphError when max_clauses is reached without uniqueness.
PlantedInstance plant(const PlantingConfig& cfg);

struct CombineResult {
    Qubo qubo;
    // false when num_vars > 24 and the q1-attains-its-minimum-at-planted
    // precondition was accepted untested
    bool minimizer_verified = false;
};

// alpha1 * q1 + alpha2 * q2.qubo, coefficient-wise. The sum keeps q2's
// planted solution as its unique minimizer provided q1 attains its minimum
// there; that precondition is brute-force checked when num_vars <= 24 and
// trusted (flagged) otherwise. Throws std::invalid_argument for dimension
// mismatch, non-positive alphas, or a verified precondition violation.
CombineResult combine(double alpha1, const Qubo& q1, double alpha2,
                      const PlantedInstance& q2);

} // namespace posiplant
