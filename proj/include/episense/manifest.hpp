#ifndef EPISENSE_MANIFEST_HPP
#define EPISENSE_MANIFEST_HPP

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace episense::manifest {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a 64-bit content digest, hex-encoded. Not cryptographic; used only
/// to record which inputs produced an output.
std::string content_digest(std::string_view bytes);

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> config; // echoed flag values
    std::map<std::string, std::string> input_digests; // path -> digest
};

/// Deterministic JSON rendering (no timestamps).
std::string to_json(const RunManifest& m);

/// Writes `<output_path>.manifest.json` next to an output file.
void write_sidecar(const std::string& output_path, const RunManifest& m);

} // namespace episense::manifest

#endif
