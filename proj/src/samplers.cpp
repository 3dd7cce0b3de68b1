#include "posiplant/samplers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "posiplant/io.hpp"
#include "posiplant/rng.hpp"

namespace posiplant {

namespace {

struct FlatQubo {
    int n = 0;
    std::vector<double> lin;
    std::vector<int> row_start; // CSR neighbours
    std::vector<int> nbr;
    std::vector<double> wgt;

    explicit FlatQubo(const Qubo& q) : n(static_cast<int>(q.numVars())), lin(n, 0.0) {
        for (const auto& [i, a] : q.linear()) lin[i] = a;
        std::vector<int> deg(n, 0);
        for (const auto& [k, a] : q.quadratic()) {
            (void)a;
            deg[k.first]++;
            deg[k.second]++;
        }
        row_start.assign(n + 1, 0);
        for (int i = 0; i < n; ++i) row_start[i + 1] = row_start[i] + deg[i];
        nbr.resize(row_start[n]);
        wgt.resize(row_start[n]);
        std::vector<int> fill(row_start.begin(), row_start.end() - 1);
        for (const auto& [k, a] : q.quadratic()) {
            const int i = static_cast<int>(k.first), j = static_cast<int>(k.second);
            nbr[fill[i]] = j;
            wgt[fill[i]++] = a;
            nbr[fill[j]] = i;
            wgt[fill[j]++] = a;
        }
    }

    // dE of flipping bit i in state x
    double flipCost(const std::vector<std::uint8_t>& x, int i) const {
        double field = lin[i];
        for (int e = row_start[i]; e < row_start[i + 1]; ++e) {
            if (x[nbr[e]]) field += wgt[e];
        }
        return x[i] ? -field : field;
    }

    void allFlipCosts(const std::vector<std::uint8_t>& x, std::vector<double>& delta) const {
        for (int i = 0; i < n; ++i) delta[i] = flipCost(x, i);
    }

    // after bit i has been flipped, refresh the cached costs of i and its
    // neighbours in O(deg)
    void updateAfterFlip(const std::vector<std::uint8_t>& x, int i,
                         std::vector<double>& delta) const {
        delta[i] = -delta[i];
        const double s = x[i] ? 1.0 : -1.0;
        for (int e = row_start[i]; e < row_start[i + 1]; ++e) {
            const int j = nbr[e];
            delta[j] += (x[j] ? -1.0 : 1.0) * wgt[e] * s;
        }
    }
};

void randomState(std::vector<std::uint8_t>& x, Rng& rng) {
    for (auto& b : x) b = static_cast<std::uint8_t>(rng.below(2));
}

void validateParams(const SamplerParams& p) {
    if (p.num_reads < 1) throw std::invalid_argument("sampler: num_reads must be >= 1");
    if (p.sweeps < 1) throw std::invalid_argument("sampler: sweeps must be >= 1");
    if (p.beta_min.has_value() != p.beta_max.has_value()) {
        throw std::invalid_argument("sampler: give both beta_min and beta_max or neither");
    }
    if (p.beta_min) {
        if (!(*p.beta_min > 0.0) || !(*p.beta_max >= *p.beta_min)) {
            throw std::invalid_argument("sampler: need 0 < beta_min <= beta_max");
        }
    }
}

} // namespace

double SampleSet::bestEnergy() const {
    if (records.empty()) throw std::invalid_argument("sample set is empty");
    double best = records.front().energy;
    for (const auto& r : records) best = std::min(best, r.energy);
    return best;
}

std::pair<double, double> defaultBetaRange(const Qubo& q) {
    // hot end: accept the worst possible flip with probability 1/2;
    // cold end: accept the smallest possible uphill flip with probability 1/100
    double max_field = 0.0;
    std::vector<double> total(q.numVars(), 0.0);
    for (const auto& [i, a] : q.linear()) total[i] += std::abs(a);
    for (const auto& [k, a] : q.quadratic()) {
        total[k.first] += std::abs(a);
        total[k.second] += std::abs(a);
    }
    for (double w : total) max_field = std::max(max_field, w);

    double min_coeff = 0.0;
    auto consider = [&](double a) {
        const double m = std::abs(a);
        if (m > 0.0 && (min_coeff == 0.0 || m < min_coeff)) min_coeff = m;
    };
    for (const auto& [i, a] : q.linear()) consider(a);
    for (const auto& [k, a] : q.quadratic()) consider(a);

    if (max_field == 0.0) return {0.1, 1.0}; // constant energy landscape
    return {std::log(2.0) / max_field, std::log(100.0) / min_coeff};
}

SampleSet simulatedAnnealing(const Qubo& q, const SamplerParams& params) {
    validateParams(params);
    const auto t0 = std::chrono::steady_clock::now();
    const FlatQubo fq(q);
    const int n = fq.n;

    double beta0, beta1;
    if (params.beta_min) {
        beta0 = *params.beta_min;
        beta1 = *params.beta_max;
    } else {
        std::tie(beta0, beta1) = defaultBetaRange(q);
    }

    // geometric ladder, one sweep per rung
    std::vector<double> betas(params.sweeps);
    if (params.sweeps == 1) {
        betas[0] = beta1;
    } else {
        const double ratio = beta1 / beta0;
        for (int s = 0; s < params.sweeps; ++s) {
            betas[s] = beta0 * std::pow(ratio, static_cast<double>(s) / (params.sweeps - 1));
        }
    }

    SampleSet out;
    out.sampler = "sa";
    out.num_reads = params.num_reads;
    out.sweeps = params.sweeps;
    out.beta_min = beta0;
    out.beta_max = beta1;
    out.seed = params.seed;
    out.records.reserve(params.num_reads);

#ifdef NDEBUG
    const bool self_check = params.self_check && n <= 100;
#else
    const bool self_check = n <= 100;
#endif

    std::vector<std::uint8_t> x(n);
    std::vector<double> delta(n);
    Bitstring dbg;
    double tracked = 0.0;
    for (int read = 0; read < params.num_reads; ++read) {
        Rng rng(Rng::derive(params.seed, static_cast<std::uint64_t>(read)));
        randomState(x, rng);
        fq.allFlipCosts(x, delta);
        if (self_check) {
            dbg.bits = x;
            tracked = eval(q, dbg);
        }
        for (double beta : betas) {
            // no acceptance is representable past exp(-44); skip the draw
            const double reject_above = 44.0 / beta;
            for (int i = 0; i < n; ++i) {
                const double d = delta[i];
                if (d > 0.0) {
                    if (d >= reject_above) continue;
                    if (rng.uniform01() >= std::exp(-beta * d)) continue;
                }
                x[i] ^= 1;
                fq.updateAfterFlip(x, i, delta);
                if (self_check) {
                    tracked += d;
                    dbg.bits = x;
                    if (tracked != eval(q, dbg)) {
                        throw std::logic_error(
                            "sa: incremental flip cost diverged from re-evaluation");
                    }
                }
            }
        }
        SampleRecord rec;
        rec.read_id = read;
        rec.x.bits = x;
        rec.energy = eval(q, rec.x);
        out.records.push_back(std::move(rec));
    }
    out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

SampleSet steepestDescent(const Qubo& q, const SamplerParams& params) {
    validateParams(params);
    const auto t0 = std::chrono::steady_clock::now();
    const FlatQubo fq(q);
    const int n = fq.n;

    SampleSet out;
    out.sampler = "greedy";
    out.num_reads = params.num_reads;
    out.seed = params.seed;
    out.records.reserve(params.num_reads);

    std::vector<std::uint8_t> x(n);
    std::vector<double> delta(n);
    for (int read = 0; read < params.num_reads; ++read) {
        Rng rng(Rng::derive(params.seed, static_cast<std::uint64_t>(read)));
        randomState(x, rng);
        fq.allFlipCosts(x, delta);
        while (true) {
            int best = -1;
            double best_d = 0.0;
            for (int i = 0; i < n; ++i) {
                if (delta[i] < best_d) {
                    best_d = delta[i];
                    best = i;
                }
            }
            if (best < 0) break; // single-flip local minimum
            x[best] ^= 1;
            fq.updateAfterFlip(x, best, delta);
        }
        SampleRecord rec;
        rec.read_id = read;
        rec.x.bits = x;
        rec.energy = eval(q, rec.x);
        out.records.push_back(std::move(rec));
    }
    out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

SampleSet exhaustive(const Qubo& q, int max_vars) {
    const auto t0 = std::chrono::steady_clock::now();
    const BruteForceResult r = bruteForce(q, max_vars);

    SampleSet out;
    out.sampler = "exhaustive";
    out.num_reads = static_cast<int>(r.minimizers.size());
    out.records.reserve(r.minimizers.size());
    for (std::size_t i = 0; i < r.minimizers.size(); ++i) {
        out.records.push_back(
            {static_cast<int>(i), r.minimizers[i], r.min_energy});
    }
    out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

void writeSampleCsv(const SampleSet& s, std::ostream& out) {
    out << "read_id,energy,bitstring,sampler,seed\n";
    for (const auto& r : s.records) {
        out << r.read_id << ',' << formatNumber(r.energy) << ',' << r.x.toHex() << ','
            << s.sampler << ',' << s.seed << '\n';
    }
}

} // namespace posiplant
