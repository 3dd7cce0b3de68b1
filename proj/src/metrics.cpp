#include "posiplant/metrics.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "posiplant/io.hpp"

namespace posiplant {

double gsp(const SampleSet& s, double ground_energy) {
    if (s.records.empty()) throw std::invalid_argument("gsp: empty sample set");
    std::size_t hits = 0;
    for (const auto& r : s.records) {
        if (r.energy == ground_energy) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(s.records.size());
}

std::optional<double> tts99(double total_time_s, int num_reads, double p) {
    if (!(total_time_s > 0.0)) throw std::invalid_argument("tts99: total_time_s must be > 0");
    if (num_reads < 1) throw std::invalid_argument("tts99: num_reads must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("tts99: p must lie in [0, 1]");
    const double per_read = total_time_s / num_reads;
    if (p == 0.0) return std::nullopt;
    if (p == 1.0) return per_read;
    return per_read * std::log(0.01) / std::log(1.0 - p);
}

void writeRunReport(const std::vector<RunReportRow>& rows, std::ostream& out) {
    out << "instance,sampler,A,p,tts_99,total_time_s\n";
    for (const auto& r : rows) {
        out << r.instance << ',' << r.sampler << ',' << r.num_reads << ','
            << formatNumber(r.p) << ',';
        if (r.tts_99) out << formatNumber(*r.tts_99);
        out << ',' << formatNumber(r.total_time_s) << '\n';
    }
}

} // namespace posiplant
