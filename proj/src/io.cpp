#include "posiplant/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace posiplant {

using nlohmann::json;

std::string formatNumber(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

// exact integers serialize as JSON integers, everything else as double
json numberJson(double v) {
    if (std::floor(v) == v && std::abs(v) <= 9007199254740992.0) {
        return json(static_cast<std::int64_t>(v));
    }
    return json(v);
}

json bitsJson(const Bitstring& x) {
    json a = json::array();
    for (std::size_t i = 0; i < x.size(); ++i) a.push_back(static_cast<int>(x[i]));
    return a;
}

Bitstring bitsFromJson(const json& a) {
    if (!a.is_array()) throw std::invalid_argument("instance: planted must be an array");
    Bitstring x(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const int b = a[i].get<int>();
        if (b != 0 && b != 1) throw std::invalid_argument("instance: planted bits must be 0/1");
        x.bits[i] = static_cast<std::uint8_t>(b);
    }
    return x;
}

} // namespace

InstanceData toInstanceData(const PlantedInstance& inst) {
    InstanceData d;
    d.qubo = inst.qubo;
    d.planted = inst.planted;
    d.planted_energy = inst.planted_energy;
    d.clause_count = inst.clause_count;
    d.seed = inst.seed;
    d.edge_set_label = inst.edge_set_label;
    return d;
}

std::string instanceToJson(const InstanceData& inst) {
    json j;
    j["format_version"] = kFormatVersion;
    j["generator_version"] = kGeneratorVersion;
    j["seed"] = inst.seed;
    j["num_vars"] = inst.qubo.numVars();
    j["planted"] = bitsJson(inst.planted);
    j["planted_energy"] = numberJson(inst.planted_energy);
    j["offset"] = numberJson(inst.qubo.offset());
    json lin = json::object();
    for (const auto& [i, v] : inst.qubo.linear()) {
        lin[std::to_string(i)] = numberJson(v);
    }
    j["linear"] = lin;
    json quad = json::array();
    for (const auto& [k, v] : inst.qubo.quadratic()) {
        quad.push_back(json::array({k.first, k.second, numberJson(v)}));
    }
    j["quadratic"] = quad;
    j["edge_set_label"] = inst.edge_set_label;
    j["clause_count"] = inst.clause_count;
    return j.dump(2) + "\n";
}

InstanceData instanceFromJson(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("format_version").get<std::string>() != kFormatVersion) {
        throw std::invalid_argument("instance: unsupported format_version");
    }
    InstanceData d;
    const Var n = j.at("num_vars").get<Var>();
    d.qubo = Qubo(n);
    d.qubo.addOffset(j.at("offset").get<double>());
    for (const auto& [key, v] : j.at("linear").items()) {
        std::size_t used = 0;
        const unsigned long i = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument("instance: bad linear key");
        d.qubo.addLinear(static_cast<Var>(i), v.get<double>());
    }
    for (const auto& entry : j.at("quadratic")) {
        if (!entry.is_array() || entry.size() != 3) {
            throw std::invalid_argument("instance: quadratic entries are [i, j, value]");
        }
        d.qubo.addQuadratic(entry[0].get<Var>(), entry[1].get<Var>(), entry[2].get<double>());
    }
    d.planted = bitsFromJson(j.at("planted"));
    if (d.planted.size() != n) {
        throw std::invalid_argument("instance: planted length mismatch");
    }
    d.planted_energy = j.at("planted_energy").get<double>();
    d.clause_count = j.at("clause_count").get<std::size_t>();
    d.seed = j.at("seed").get<std::uint64_t>();
    d.edge_set_label = j.at("edge_set_label").get<std::string>();
    return d;
}

std::string sampleSetToJson(const SampleSet& s, const std::string& instance_id,
                            std::optional<double> planted_energy, Var num_vars) {
    json j;
    j["format_version"] = kFormatVersion;
    j["generator_version"] = kGeneratorVersion;
    j["instance"] = instance_id;
    j["num_vars"] = num_vars;
    j["sampler"] = s.sampler;
    j["schedule"] = "geometric";
    j["num_reads"] = s.num_reads;
    j["sweeps"] = s.sweeps;
    j["beta_min"] = numberJson(s.beta_min);
    j["beta_max"] = numberJson(s.beta_max);
    j["seed"] = s.seed;
    if (planted_energy) j["planted_energy"] = numberJson(*planted_energy);
    j["wall_time_s"] = s.wall_time_s;
    json recs = json::array();
    for (const auto& r : s.records) {
        recs.push_back(json::array({r.read_id, numberJson(r.energy), r.x.toHex()}));
    }
    j["records"] = recs;
    return j.dump(2) + "\n";
}

SampleSetFile sampleSetFromJson(const std::string& text) {
    const json j = json::parse(text);
    if (j.at("format_version").get<std::string>() != kFormatVersion) {
        throw std::invalid_argument("sample set: unsupported format_version");
    }
    SampleSetFile f;
    f.instance_id = j.at("instance").get<std::string>();
    f.num_vars = j.at("num_vars").get<Var>();
    if (j.contains("planted_energy")) f.planted_energy = j.at("planted_energy").get<double>();
    SampleSet& s = f.samples;
    s.sampler = j.at("sampler").get<std::string>();
    s.num_reads = j.at("num_reads").get<int>();
    s.sweeps = j.at("sweeps").get<int>();
    s.beta_min = j.at("beta_min").get<double>();
    s.beta_max = j.at("beta_max").get<double>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.wall_time_s = j.at("wall_time_s").get<double>();
    for (const auto& entry : j.at("records")) {
        if (!entry.is_array() || entry.size() != 3) {
            throw std::invalid_argument("sample set: records are [read_id, energy, bits]");
        }
        SampleRecord r;
        r.read_id = entry[0].get<int>();
        r.energy = entry[1].get<double>();
        r.x = Bitstring::fromHex(entry[2].get<std::string>(), f.num_vars);
        s.records.push_back(std::move(r));
    }
    return f;
}

void writeFileAtomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string readFile(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace posiplant
