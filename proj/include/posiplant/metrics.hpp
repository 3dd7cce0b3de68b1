#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "posiplant/samplers.hpp"

namespace posiplant {

// Ground-state probability: the fraction of reads whose energy equals
// ground_energy exactly (instances are integer-valued, so no tolerance).
// Throws std::invalid_argument on an empty sample set.
double gsp(const SampleSet& s, double ground_energy);

// Time to solution with 99% confidence:
//   p in (0,1): (total_time_s / num_reads) * ln(0.01) / ln(1 - p)
//   p = 1:      total_time_s / num_reads
//   p = 0:      undefined (nullopt)
// Throws std::invalid_argument when total_time_s <= 0, num_reads < 1, or p
// lies outside [0, 1].
std::optional<double> tts99(double total_time_s, int num_reads, double p);

struct RunReportRow {
    std::string instance;
    std::string sampler;
    int num_reads = 0;
    double p = 0.0; // ground-state probability
    std::optional<double> tts_99;
    double total_time_s = 0.0;
};

// CSV: instance,sampler,A,p,tts_99,total_time_s with an empty tts_99 field
// when p = 0. Rows are written in the given order.
void writeRunReport(const std::vector<RunReportRow>& rows, std::ostream& out);

} // namespace posiplant
