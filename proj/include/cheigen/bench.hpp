#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cheigen/extract.hpp"
#include "cheigen/oracle.hpp"

#include "json.hpp"

namespace cheigen::bench {

// Per-class benchmark outcome. Timings are medians over the generated
// matrices; ratio is oracle time over column-method time.
struct ClassStats {
    SpectralClass cls;
    int count = 0;
    int span_failures = 0;
    double analyze_median_us = 0.0;
    double oracle_median_us = 0.0;
    double ratio = 0.0;
};

struct BenchReport {
    std::vector<ClassStats> stats;
    int total_matrices() const;
    int total_span_failures() const;
    // True when every matrix produced span-equal eigenspaces from both
    // methods. Timings are only meaningful when this holds.
    bool gate_passed() const;
};

// Runs the benchmark in exact mode: per class, generate `count_per_class`
// random similarity-conjugated Jordan forms, run the column-extraction
// pipeline and the null-space reference solver on each, compare eigenspace
// spans, and time both. Deterministic for a fixed seed.
BenchReport run(int count_per_class, const std::vector<SpectralClass>& classes,
                std::uint64_t seed = 0xC0FFEEULL);

// Text rendering states the span-equality gate before any timing figures.
std::string render_text(const BenchReport& report);
nlohmann::json render_json(const BenchReport& report);

} // namespace cheigen::bench
