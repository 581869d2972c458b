#include "episense/manifest.hpp"
#include "episense/errors.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>

namespace episense::manifest {

std::string content_digest(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string to_json(const RunManifest& m) {
    nlohmann::json j;
    j["command"] = m.command;
    j["config"] = m.config;
    j["input_digests"] = m.input_digests;
    j["tool_version"] = kToolVersion;
    return j.dump(2) + "\n";
}

void write_sidecar(const std::string& output_path, const RunManifest& m) {
    std::ofstream out(output_path + ".manifest.json", std::ios::binary);
    if (!out) throw DataError("CannotWrite: " + output_path + ".manifest.json");
    out << to_json(m);
}

} // namespace episense::manifest
