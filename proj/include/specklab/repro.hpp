#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace specklab {

struct ReproRecord {
    std::string name;
    std::string expected;
    std::string computed;
    double tolerance = 0;   // 0 means exact equality
    std::string status;     // "pass", "fail" or "nonconvergence"
    double runtime_seconds = 0;
    bool passed() const { return status == "pass"; }
};

struct ReproReport {
    std::vector<ReproRecord> records;
    bool all_passed() const;
};

struct ReproOptions {
    std::uint64_t seed = 7;
    std::size_t random_functionals = 50;
    double sdp_tolerance = 1e-7;
    std::size_t sdp_max_iterations = 200'000;
    /// Flip the sign of <X4> in the pentagonal expression (negative control).
    bool tamper_pentagonal = false;
    /// Directory with the bundled fixtures; empty skips the fixture check.
    std::filesystem::path data_dir;
};

/// Recomputes every headline number: pentagonal values over G, C and Q1,
/// the set sandwich on random functionals, the I_n family counts and CE
/// certificates, dimension and saturation counts, the n = 3, 4 collapse,
/// the cyclic-polytope identity, the unsharp qubit simulation, the CE
/// violation witness on the triangle and the (4,2) facet classes.
/// Failures are recorded; the run always completes.
ReproReport reproduce_paper(const ReproOptions& options = {});

/// The default fixture location compiled into the library.
std::filesystem::path default_data_dir();

}  // namespace specklab
