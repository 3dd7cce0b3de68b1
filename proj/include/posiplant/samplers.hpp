#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "posiplant/model.hpp"

namespace posiplant {

struct SamplerParams {
    int num_reads = 800;
    int sweeps = 1000;
    // geometric inverse-temperature ladder; when unset the range is derived
    // from the instance (hot end from the largest possible single-flip
    // |dE|, cold end from the smallest nonzero coefficient magnitude)
    std::optional<double> beta_min;
    std::optional<double> beta_max;
    std::uint64_t seed = 0;
    // compare the incrementally tracked energy with a full re-evaluation at
    // every accepted flip (instances up to 100 variables; throws
    // std::logic_error on divergence). Always on in debug builds.
    bool self_check = false;
};

struct SampleRecord {
    int read_id = 0;
    Bitstring x;
    double energy = 0.0; // eval(qubo, x), offset included
};

struct SampleSet {
    std::string sampler; // "sa" | "greedy" | "exhaustive"
    int num_reads = 0;
    int sweeps = 0;
    double beta_min = 0.0;
    double beta_max = 0.0;
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;
    std::vector<SampleRecord> records;

    double bestEnergy() const;
};

// (beta_min, beta_max) actually used for a given instance and params.
std::pair<double, double> defaultBetaRange(const Qubo& q);

// Single-bit Metropolis annealer: every read starts from a fresh uniform
// random state (seeded per read from params.seed), sweeps the variables in
// index order once per ladder step, and tracks flip costs incrementally
// (O(deg) updates). Reported energies are exact re-evaluations.
SampleSet simulatedAnnealing(const Qubo& q, const SamplerParams& params);

// Greedy steepest-descent: always flips the bit with the largest energy
// decrease (ties to the lowest index) until single-flip local minimality.
SampleSet steepestDescent(const Qubo& q, const SamplerParams& params);

// Wraps bruteForce: one record per minimizer, lexicographic order.
SampleSet exhaustive(const Qubo& q, int max_vars = 24);

// Sampleset CSV: header read_id,energy,bitstring,sampler,seed; bitstrings
// packed as hex.
void writeSampleCsv(const SampleSet& s, std::ostream& out);

} // namespace posiplant
