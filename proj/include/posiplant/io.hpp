#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "posiplant/model.hpp"
#include "posiplant/planting.hpp"
#include "posiplant/samplers.hpp"

namespace posiplant {

inline constexpr const char* kFormatVersion = "1";
inline constexpr const char* kGeneratorVersion = "posiplant/0.1.0";

// Shortest round-trip decimal text (std::to_chars); integral values print
// without a decimal point. Used for every number we serialize so identical
// runs produce identical bytes.
std::string formatNumber(double v);

// Instance payload as stored on disk (the posiform is not persisted; it is
// implied by the QUBO plus the planted certificate).
struct InstanceData {
    Qubo qubo;
    Bitstring planted;
    double planted_energy = 0.0;
    std::size_t clause_count = 0;
    std::uint64_t seed = 0;
    std::string edge_set_label;
};

InstanceData toInstanceData(const PlantedInstance& inst);

// JSON with sorted keys, two-space indent, integral numbers as integers;
// a fixed seed therefore reproduces the file byte for byte.
std::string instanceToJson(const InstanceData& inst);
InstanceData instanceFromJson(const std::string& text);

struct SampleSetFile {
    SampleSet samples;
    std::string instance_id;
    std::optional<double> planted_energy;
    Var num_vars = 0;
};

std::string sampleSetToJson(const SampleSet& s, const std::string& instance_id,
                            std::optional<double> planted_energy, Var num_vars);
SampleSetFile sampleSetFromJson(const std::string& text);

// Writes to a sibling temp file and renames over the target, so readers
// never observe a half-written file.
void writeFileAtomic(const std::filesystem::path& path, const std::string& content);

std::string readFile(const std::filesystem::path& path);

} // namespace posiplant
