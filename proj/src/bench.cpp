#include "cheigen/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>

namespace cheigen::bench {

namespace {

double median_us(std::vector<double>& samples) {
    if (samples.empty()) return 0.0;
    std::sort(samples.begin(), samples.end());
    size_t n = samples.size();
    if (n % 2 == 1) return samples[n / 2];
    return 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
}

bool structures_span_equal(const EigenStructure& es, const EigenStructure& ref) {
    if (es.records.size() != ref.records.size()) return false;
    for (size_t i = 0; i < es.records.size(); ++i) {
        const auto& a = es.records[i];
        const auto& b = ref.records[i];
        if (!(a.eigenvalue == b.eigenvalue)) return false;
        if (a.geometric != b.geometric) return false;
        if (!oracle::spans_equal(a.basis, b.basis)) return false;
    }
    return true;
}

} // namespace

int BenchReport::total_matrices() const {
    int n = 0;
    for (const auto& s : stats) n += s.count;
    return n;
}

int BenchReport::total_span_failures() const {
    int n = 0;
    for (const auto& s : stats) n += s.span_failures;
    return n;
}

bool BenchReport::gate_passed() const { return total_span_failures() == 0; }

BenchReport run(int count_per_class, const std::vector<SpectralClass>& classes,
                std::uint64_t seed) {
    using clock = std::chrono::steady_clock;
    BenchReport report;
    std::mt19937_64 rng(seed);
    for (const auto& cls : classes) {
        ClassStats st;
        st.cls = cls;
        std::vector<double> analyze_us, oracle_us;
        analyze_us.reserve(static_cast<size_t>(count_per_class));
        oracle_us.reserve(static_cast<size_t>(count_per_class));
        for (int i = 0; i < count_per_class; ++i) {
            oracle::JordanSpec jspec = oracle::random_spec_for(cls, rng);
            SmallMatrix a = oracle::generate_matrix(jspec, rng());
            Spectrum spec = oracle::spectrum_of(jspec);

            auto t0 = clock::now();
            EigenStructure es = analyze(a);
            auto t1 = clock::now();
            EigenStructure ref = oracle::eigensolve_reference(a, spec);
            auto t2 = clock::now();

            analyze_us.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
            oracle_us.push_back(std::chrono::duration<double, std::micro>(t2 - t1).count());
            if (!structures_span_equal(es, ref)) ++st.span_failures;
            ++st.count;
        }
        st.analyze_median_us = median_us(analyze_us);
        st.oracle_median_us = median_us(oracle_us);
        st.ratio = st.analyze_median_us > 0.0 ? st.oracle_median_us / st.analyze_median_us : 0.0;
        report.stats.push_back(std::move(st));
    }
    return report;
}

std::string render_text(const BenchReport& report) {
    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "span-equality gate: %s (%d failure(s) in %d matrices)\n",
                  report.gate_passed() ? "PASS" : "FAIL", report.total_span_failures(),
                  report.total_matrices());
    out += buf;
    if (!report.gate_passed()) {
        out += "timings withheld: the two methods disagreed on at least one eigenspace\n";
        return out;
    }
    std::snprintf(buf, sizeof buf, "%-24s %8s %12s %12s %8s\n", "class", "count", "column(us)",
                  "oracle(us)", "ratio");
    out += buf;
    for (const auto& st : report.stats) {
        std::snprintf(buf, sizeof buf, "%-24s %8d %12.2f %12.2f %7.2fx\n", st.cls.label().c_str(),
                      st.count, st.analyze_median_us, st.oracle_median_us, st.ratio);
        out += buf;
    }
    return out;
}

nlohmann::json render_json(const BenchReport& report) {
    nlohmann::json j;
    j["gate_passed"] = report.gate_passed();
    j["total_matrices"] = report.total_matrices();
    j["total_span_failures"] = report.total_span_failures();
    j["classes"] = nlohmann::json::array();
    for (const auto& st : report.stats)
        j["classes"].push_back({{"class", st.cls.label()},
                                {"count", st.count},
                                {"span_failures", st.span_failures},
                                {"column_median_us", st.analyze_median_us},
                                {"oracle_median_us", st.oracle_median_us},
                                {"ratio", st.ratio}});
    return j;
}

} // namespace cheigen::bench
