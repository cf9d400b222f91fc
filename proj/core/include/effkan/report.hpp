#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace effkan {

// Outcome of one checker sweep. `failures` holds canonical descriptions of
// the counterexamples, sorted; `independent_count` is the same cardinality
// as `instances` computed by a second route, so reports can cross-check the
// enumeration. Under sampling, `instances` is the sample size while
// `independent_count` stays the full cardinality.
struct CheckReport {
    std::string checker;
    std::uint64_t instances = 0;
    std::uint64_t independent_count = 0;
    std::vector<std::string> failures;

    bool pass() const { return failures.empty(); }
};

// Opt-in seeded sampling: count = 0 sweeps exhaustively.
struct SampleSpec {
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
};

}  // namespace effkan
