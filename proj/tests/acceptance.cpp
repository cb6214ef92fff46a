// Acceptance gate: twelve checks, one line of output each, exit code equal
// to the number of failures. Each check is independent; an exception inside
// one marks it failed and the rest still run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "cheigen/extract.hpp"
#include "cheigen/oracle.hpp"

using namespace cheigen;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail = "") {
    std::string suffix = detail.empty() ? "" : "  (" + detail + ")";
    std::printf("[%s] %2d %s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(), suffix.c_str());
    if (!ok) ++failures;
}

template <typename F>
void criterion(int number, const std::string& name, F&& body) {
    try {
        report(number, name, body());
    } catch (const std::exception& e) {
        report(number, name, false, e.what());
    }
}

const EigenRecord& record_for(const EigenStructure& es, long long value) {
    for (const auto& rec : es.records)
        if (rec.eigenvalue == Scalar::exact(value)) return rec;
    throw Error("no record for eigenvalue " + std::to_string(value));
}

bool trace_line_with(const EigenStructure& es, const std::string& a, const std::string& b) {
    for (const auto& line : es.trace.lines())
        if (line.find(a) != std::string::npos && line.find(b) != std::string::npos) return true;
    return false;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool in_span(const std::vector<SmallVector>& basis, const SmallVector& v) {
    std::vector<SmallVector> joined = basis;
    joined.push_back(v);
    return oracle::rank(joined) == oracle::rank(basis);
}

} // namespace

int main() {
    criterion(1, "2x2 distinct: eigenvectors from picked columns, under 1 ms", [] {
        SmallMatrix a = SmallMatrix::from_ints({{4, 1}, {2, 5}});
        EigenStructure es = analyze(a);
        bool values = es.records.size() == 2 && es.records[0].eigenvalue == Scalar::exact(3) &&
                      es.records[1].eigenvalue == Scalar::exact(6);
        bool vectors = es.records[0].basis[0] == SmallVector::from_ints({1, -1}) &&
                       es.records[1].basis[0] == SmallVector::from_ints({1, 2});
        bool traced = trace_line_with(es, "column 0 of B1", "lambda = 6");
        double best = 1e300;
        for (int i = 0; i < 3; ++i) {
            auto t0 = std::chrono::steady_clock::now();
            EigenStructure run = analyze(a);
            double ms = seconds_since(t0) * 1000.0;
            if (run.records.size() == 2 && ms < best) best = ms;
        }
        return values && vectors && traced && best < 1.0;
    });

    criterion(2, "2x2 defective double: chain identity holds exactly", [] {
        SmallMatrix a = SmallMatrix::from_ints({{2, 1}, {-1, 4}});
        EigenStructure es = analyze(a);
        const EigenRecord& rec = es.records.at(0);
        if (rec.eigenvalue != Scalar::exact(3) || rec.chains.size() != 1) return false;
        const JordanChain& ch = rec.chains[0];
        if (ch.vectors.size() != 2) return false;
        bool vecs = ch.vectors[0] == SmallVector::from_ints({-1, -1}) &&
                    ch.vectors[1] == SmallVector::from_ints({1, 0});
        SmallVector lhs = a * ch.vectors[1];
        SmallVector rhs = Scalar::exact(3) * ch.vectors[1] + ch.vectors[0];
        return vecs && lhs == rhs;
    });

    criterion(3, "3x3 distinct: product column traced, oracle spans agree", [] {
        SmallMatrix a = SmallMatrix::from_ints({{7, -4, -5}, {3, -2, -3}, {6, -4, -4}});
        EigenStructure es = analyze(a);
        bool vector = record_for(es, 1).basis[0] == SmallVector::from_ints({1, -1, 2});
        bool traced = es.trace.mentions("[[3, 0, -3], [-3, 0, 3], [6, 0, -6]]");
        EigenStructure ref = oracle::eigensolve_reference(a, eigenvalues_exact(char_poly(a)));
        bool spans = true;
        for (long long v : {2, -2})
            spans = spans &&
                    oracle::spans_equal(record_for(es, v).basis, record_for(ref, v).basis);
        return vector && traced && spans;
    });

    criterion(4, "3x3 simple+double geo 2: plane spanned, all columns inside", [] {
        SmallMatrix a = SmallMatrix::from_ints({{4, -9, -6}, {-6, 7, 6}, {12, -18, -14}});
        EigenStructure es = analyze(a);
        const EigenRecord& dbl = record_for(es, -2);
        if (dbl.geometric != 2 || dbl.basis.size() != 2) return false;
        std::vector<SmallVector> expected = {SmallVector::from_ints({1, -2, 4}),
                                             SmallVector::from_ints({-3, 2, -6})};
        bool span = oracle::spans_equal(dbl.basis, expected);
        SmallMatrix b1 = shift(a, Scalar::exact(1));
        bool cols = true;
        for (int j = 0; j < 3; ++j) cols = cols && in_span(dbl.basis, b1.col(j));
        bool simple = record_for(es, 1).basis[0] == SmallVector::from_ints({1, -1, 2});
        return span && cols && simple;
    });

    criterion(5, "3x3 simple+double geo 1: chain from a picked column", [] {
        SmallMatrix a = SmallMatrix::from_ints({{5, -10, -7}, {-6, 7, 6}, {13, -19, -15}});
        EigenStructure es = analyze(a);
        const EigenRecord& dbl = record_for(es, -2);
        if (dbl.chains.size() != 1 || dbl.chains[0].vectors.size() != 2) return false;
        const SmallVector& v = dbl.chains[0].vectors[0];
        const SmallVector& w = dbl.chains[0].vectors[1];
        bool proportional = normalize_eigenvector(v) ==
                            normalize_eigenvector(SmallVector::from_ints({-3, 0, -3}));
        return proportional && w == SmallVector::from_ints({4, -6, 13});
    });

    criterion(6, "3x3 triple geo 2, case 1: ratios and plane", [] {
        SmallMatrix a = SmallMatrix::from_ints({{-2, 5, -10}, {-1, 4, -2}, {2, -2, 7}});
        EigenStructure es = analyze(a);
        if (es.cls.label() != "Triple(geo 2)" || !es.profile) return false;
        bool ratios = es.profile->case_id == 1 && es.profile->t.value() == Scalar::exact(-1) &&
                      es.profile->s.value() == Scalar::exact(2);
        std::vector<SmallVector> expected = {SmallVector::from_ints({1, 1, 0}),
                                             SmallVector::from_ints({-2, 0, 1})};
        return ratios && oracle::spans_equal(es.records[0].basis, expected);
    });

    criterion(7, "3x3 triple geo 2, case 2: zero first column handled", [] {
        SmallMatrix a = SmallMatrix::from_ints({{2, -1, 2}, {0, -4, 12}, {0, -3, 8}});
        EigenStructure es = analyze(a);
        if (es.cls.label() != "Triple(geo 2)" || !es.profile) return false;
        bool prof = es.profile->case_id == 2 && es.profile->t.value() == Scalar::exact(-2);
        std::vector<SmallVector> expected = {SmallVector::from_ints({0, 2, 1}),
                                             SmallVector::from_ints({1, 0, 0})};
        bool span = oracle::spans_equal(es.records[0].basis, expected);
        const JordanChain& ch = es.records[0].chains.at(0);
        bool chain = ch.vectors.size() == 2 &&
                     ch.vectors[0] == SmallVector::from_ints({-1, -6, -3}) &&
                     ch.vectors[1] == SmallVector::from_ints({0, 1, 0});
        return prof && span && chain;
    });

    criterion(8, "polynomial annihilation on 500 matrices per dimension, under 10 s", [] {
        std::mt19937_64 rng(515);
        auto t0 = std::chrono::steady_clock::now();
        std::vector<SpectralClass> dim2 = {{ClassKind::Distinct2, 1},
                                           {ClassKind::Double2, 1},
                                           {ClassKind::Double2, 2}};
        std::vector<SpectralClass> dim3 = {{ClassKind::Distinct3, 1},
                                           {ClassKind::SimplePlusDouble, 1},
                                           {ClassKind::SimplePlusDouble, 2},
                                           {ClassKind::Triple, 1},
                                           {ClassKind::Triple, 2},
                                           {ClassKind::Triple, 3}};
        bool ok = true;
        for (int pass = 0; pass < 2 && ok; ++pass) {
            const auto& pool = pass == 0 ? dim2 : dim3;
            for (int i = 0; i < 500 && ok; ++i) {
                SpectralClass cls = pool[static_cast<size_t>(i) % pool.size()];
                oracle::JordanSpec spec = oracle::random_spec_for(cls, rng);
                SmallMatrix a = oracle::generate_matrix(spec, rng());
                ok = ok && is_zero_matrix(char_poly(a).eval_matrix(a), 0.0);
                if (cls == SpectralClass{ClassKind::Distinct2, 1}) {
                    Spectrum s = oracle::spectrum_of(spec);
                    SmallMatrix prod =
                        shift(a, s.entry(1).value) * shift(a, s.entry(0).value);
                    ok = ok && is_zero_matrix(prod, 0.0);
                }
            }
        }
        return ok && seconds_since(t0) < 10.0;
    });

    criterion(9, "extraction equals the oracle on 1008 matrices, under 60 s", [] {
        std::mt19937_64 rng(909);
        auto t0 = std::chrono::steady_clock::now();
        for (const auto& cls : all_spectral_classes()) {
            for (int i = 0; i < 112; ++i) {
                oracle::JordanSpec spec = oracle::random_spec_for(cls, rng);
                SmallMatrix a = oracle::generate_matrix(spec, rng());
                EigenStructure es = analyze(a);
                EigenStructure ref = oracle::eigensolve_reference(a, oracle::spectrum_of(spec));
                if (es.cls != cls || es.records.size() != ref.records.size()) return false;
                for (size_t k = 0; k < es.records.size(); ++k) {
                    if (es.records[k].geometric != ref.records[k].geometric) return false;
                    if (!oracle::spans_equal(es.records[k].basis, ref.records[k].basis))
                        return false;
                }
                if (!verify_structure(a, es).all_passed()) return false;
            }
        }
        return seconds_since(t0) < 60.0;
    });

    criterion(10, "float pipeline matches exact values, residuals, labels", [] {
        std::vector<SmallMatrix> goldens = {
            SmallMatrix::from_ints({{4, 1}, {2, 5}}),
            SmallMatrix::from_ints({{2, 1}, {-1, 4}}),
            SmallMatrix::from_ints({{7, -4, -5}, {3, -2, -3}, {6, -4, -4}}),
            SmallMatrix::from_ints({{4, -9, -6}, {-6, 7, 6}, {12, -18, -14}}),
            SmallMatrix::from_ints({{5, -10, -7}, {-6, 7, 6}, {13, -19, -15}}),
            SmallMatrix::from_ints({{-2, 5, -10}, {-1, 4, -2}, {2, -2, 7}}),
            SmallMatrix::from_ints({{2, -1, 2}, {0, -4, 12}, {0, -3, 8}})};
        for (const auto& a : goldens) {
            EigenStructure exact = analyze(a);
            SmallMatrix af = a.to_mode(Mode::Float);
            EigenStructure flt = analyze(af);
            if (flt.cls.label() != exact.cls.label()) return false;
            if (flt.records.size() != exact.records.size()) return false;
            double fro = 0.0;
            for (int i = 0; i < a.dim(); ++i)
                for (int j = 0; j < a.dim(); ++j) {
                    double x = a.at(i, j).to_double();
                    fro += x * x;
                }
            fro = std::sqrt(fro);
            for (size_t k = 0; k < flt.records.size(); ++k) {
                double got = flt.records[k].eigenvalue.flt();
                double want = exact.records[k].eigenvalue.to_double();
                if (std::abs(got - want) > 1e-9) return false;
                SmallMatrix b = shift(af, flt.records[k].eigenvalue);
                for (const auto& v : flt.records[k].basis) {
                    double residual = std::sqrt(norm2(b * v));
                    if (residual > 1e-8 * fro) return false;
                }
            }
        }
        return true;
    });

    criterion(11, "negative controls raise the right diagnoses", [] {
        bool complex_ok = false, irrational_ok = false, nilpotent_ok = false;
        try {
            analyze(SmallMatrix::from_ints({{0, 1}, {-1, 0}}));
        } catch (const ComplexSpectrum&) {
            complex_ok = true;
        }
        try {
            analyze(SmallMatrix::from_ints({{0, 1}, {2, 0}}));
        } catch (const IrrationalSpectrum&) {
            irrational_ok = true;
        }
        try {
            column_case_profile(SmallMatrix::from_ints({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}));
        } catch (const NotNilpotent&) {
            nilpotent_ok = true;
        }
        return complex_ok && irrational_ok && nilpotent_ok;
    });

    criterion(12, "bench at full count passes its gate before timings", [] {
        std::string cmd = std::string(CHEIGEN_CLI_PATH) + " bench --count 10000 2>/dev/null";
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) return false;
        std::string out;
        char buf[4096];
        size_t n;
        while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
        int status = pclose(pipe);
        if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return false;
        size_t gate = out.find("span-equality gate: PASS");
        size_t table = out.find("ratio");
        bool all_classes = out.find("Triple(geo 3)") != std::string::npos &&
                           out.find("Distinct2") != std::string::npos;
        return gate != std::string::npos && table != std::string::npos && gate < table &&
               all_classes;
    });

    std::printf("%d of 12 passed\n", 12 - failures);
    return failures;
}
