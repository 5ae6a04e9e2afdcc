#pragma once

#include "saet/carve.hpp"
#include "saet/io.hpp"

#include <string>
#include <vector>

namespace saet::shell {

using io::Json;

struct Options {
    unsigned bits = kDefaultBits;
    bool probe = false;   // probe the carved frontier
    int probe_count = 48; // frontier samples per probed set
    int jobs = 1;
};

Json analyze(const PLSet& s);
Json carve(const PLSet& s, const Options& opt);
Json extend(const PLFFunction& f);
Json eval(const PLFFunction& f, const PathGerm& a);

// Mesh exports; DimensionTooHigh when the ambient dimension exceeds 3
// (2 for the extension graph).
std::string export_mesh_off(const PLSet& s);
std::string export_tube_obj(const Tube& t, int grid);
std::string export_carved_obj(const CarvedSet& n, int grid);
std::string export_extension_obj(const PLFFunction& f, int subdiv);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs; // file, sha256
    unsigned bits = kDefaultBits;
    std::vector<std::string> suites;
    std::vector<std::string> certificates;
    std::vector<CheckResult> checks;
    double wall_ms = 0; // kept out of json() so reruns compare byte for byte

    bool passed() const;
    Json json() const;
};

const std::vector<std::string>& all_suites();
// Unknown suite names throw PreconditionViolated.
RunManifest verify(const std::vector<io::Case>& cases, const std::vector<std::string>& suites, const Options& opt);
std::vector<io::Case> load_corpus(const std::string& dir);

} // namespace saet::shell
