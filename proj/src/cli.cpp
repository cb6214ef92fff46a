#include "cheigen/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "cheigen/bench.hpp"
#include "cheigen/extract.hpp"
#include "cheigen/json_io.hpp"
#include "cheigen/oracle.hpp"

#include "CLI11.hpp"

namespace cheigen {

namespace {

std::string read_input(const std::string& path, std::istream& in) {
    if (path == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

MatrixDocument load_document(const std::string& path, std::istream& in,
                             const std::string& mode_str) {
    MatrixDocument doc = parse_matrix(read_input(path, in));
    if (!mode_str.empty()) {
        Mode want = mode_str == "exact" ? Mode::Exact : Mode::Float;
        doc.matrix = doc.matrix.to_mode(want);
    }
    return doc;
}

Spectrum spectrum_from_structure(const EigenStructure& es) {
    std::vector<Spectrum::Entry> entries;
    for (const auto& rec : es.records) entries.push_back({rec.eigenvalue, rec.algebraic});
    return Spectrum(es.matrix_dim, entries);
}

std::vector<SpectralClass> parse_class_list(const std::string& csv) {
    if (csv.empty() || csv == "all") return all_spectral_classes();
    std::vector<SpectralClass> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        bool found = false;
        for (const auto& cls : all_spectral_classes())
            if (cls.slug() == item) {
                out.push_back(cls);
                found = true;
                break;
            }
        if (!found) {
            std::string valid;
            for (const auto& cls : all_spectral_classes()) {
                if (!valid.empty()) valid += ", ";
                valid += cls.slug();
            }
            throw ValidationError("unknown class \"" + item + "\" (valid: " + valid + ")");
        }
    }
    if (out.empty()) throw ValidationError("empty class list");
    return out;
}

std::string load_spec_text(const std::string& arg, std::istream& in) {
    size_t first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && arg[first] == '{') return arg;
    return read_input(arg, in);
}

int cmd_analyze(const std::string& input, std::istream& in, std::ostream& out,
                const std::string& mode_str, const std::string& format, double tolerance,
                double cluster_eps) {
    MatrixDocument doc = load_document(input, in, mode_str);
    TolerancePolicy tol{tolerance, true};
    EigenStructure es = analyze(doc.matrix, tol, cluster_eps);
    VerificationReport report = verify_structure(doc.matrix, es, tol);
    if (format == "json")
        out << result_document(doc, es, report, tol, cluster_eps).dump(2) << "\n";
    else
        out << render_text_report(doc, es, report);
    return report.all_passed() ? 0 : 1;
}

int cmd_charpoly(const std::string& input, std::istream& in, std::ostream& out,
                 const std::string& mode_str, const std::string& format) {
    MatrixDocument doc = load_document(input, in, mode_str);
    CharPoly p = char_poly(doc.matrix);
    if (format == "json") {
        nlohmann::json j;
        j["input"]["matrix"] = matrix_to_json(doc.matrix);
        if (doc.name) j["input"]["name"] = *doc.name;
        j["mode"] = mode_name(p.mode());
        j["degree"] = p.degree();
        nlohmann::json coeffs = nlohmann::json::array();
        for (int k = 0; k <= p.degree(); ++k) coeffs.push_back(scalar_to_json(p.coeff(k)));
        j["coefficients"] = coeffs;
        j["polynomial"] = p.str();
        out << j.dump(2) << "\n";
    } else {
        out << p.str() << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& input, std::istream& in, std::ostream& out,
               const std::string& mode_str, const std::string& format, double tolerance,
               double cluster_eps) {
    MatrixDocument doc = load_document(input, in, mode_str);
    TolerancePolicy tol{tolerance, true};
    EigenStructure es = analyze(doc.matrix, tol, cluster_eps);
    VerificationReport report = verify_structure(doc.matrix, es, tol);
    if (es.mode == Mode::Exact) {
        // Cross-check against the independent null-space solver: the spans
        // must agree eigenvalue by eigenvalue.
        EigenStructure ref = oracle::eigensolve_reference(doc.matrix, spectrum_from_structure(es));
        for (size_t i = 0; i < es.records.size(); ++i) {
            bool same = es.records[i].geometric == ref.records[i].geometric &&
                        oracle::spans_equal(es.records[i].basis, ref.records[i].basis);
            report.checks.push_back(
                {"oracle span lambda=" + es.records[i].eigenvalue.str(), same, 0.0});
        }
    }
    if (format == "json") {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : report.checks)
            checks.push_back({{"name", c.name}, {"passed", c.passed}, {"residual", c.residual}});
        nlohmann::json j = {{"all_passed", report.all_passed()},
                            {"max_residual", report.max_residual()},
                            {"checks", checks}};
        out << j.dump(2) << "\n";
    } else if (report.all_passed()) {
        out << "all checks passed\n";
    } else {
        for (const auto& c : report.checks)
            if (!c.passed) out << "FAILED " << c.name << "\n";
    }
    return report.all_passed() ? 0 : 1;
}

int cmd_gen(const std::string& spec_arg, std::istream& in, std::ostream& out, std::uint64_t seed,
            int count) {
    oracle::JordanSpec jspec = parse_jordan_spec(load_spec_text(spec_arg, in));
    for (int i = 0; i < count; ++i) {
        SmallMatrix a = oracle::generate_matrix(jspec, seed + static_cast<std::uint64_t>(i));
        nlohmann::json j;
        j["matrix"] = matrix_to_json(a);
        j["name"] = "gen-" + std::to_string(seed) + "-" + std::to_string(i);
        out << j.dump() << "\n";
    }
    return 0;
}

int cmd_bench(std::ostream& out, const std::string& format, int count,
              const std::string& classes_csv) {
    if (count < 1) throw ValidationError("--count must be positive");
    std::vector<SpectralClass> classes = parse_class_list(classes_csv);
    bench::BenchReport report = bench::run(count, classes);
    if (format == "json")
        out << bench::render_json(report).dump(2) << "\n";
    else
        out << bench::render_text(report);
    return report.gate_passed() ? 0 : 1;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                std::ostream& err) {
    CLI::App app{"eigenstructure of real 2x2 and 3x3 matrices via matrix-product column extraction"};
    app.name("cheigen");
    app.require_subcommand(1);

    std::string input = "-";
    std::string format = "text";
    std::string mode_str;
    double tolerance = 1e-9;
    double cluster_eps = 1e-6;
    std::string spec_arg;
    std::uint64_t seed = 0;
    int gen_count = 1;
    int bench_count = 10000;
    std::string classes_csv = "all";

    auto add_io_flags = [&](CLI::App* sub, bool with_tolerance) {
        sub->add_option("--input", input, "input file path, or - for stdin")
            ->capture_default_str();
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
        sub->add_option("--mode", mode_str, "force exact or float mode (default: inferred)")
            ->check(CLI::IsMember({"exact", "float"}));
        if (with_tolerance) {
            sub->add_option("--tolerance", tolerance, "float-mode zero threshold")
                ->envname("CH_EIGEN_TOLERANCE")
                ->capture_default_str();
            sub->add_option("--cluster-eps", cluster_eps, "float root clustering width")
                ->capture_default_str();
        }
    };

    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "compute eigenvalues, eigenspaces, and Jordan chains");
    add_io_flags(analyze_cmd, true);
    CLI::App* charpoly_cmd =
        app.add_subcommand("charpoly", "print the characteristic polynomial");
    add_io_flags(charpoly_cmd, false);
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "analyze, then check residuals, chains, and the null-space oracle");
    add_io_flags(verify_cmd, true);

    CLI::App* gen_cmd = app.add_subcommand("gen", "generate matrices with a prescribed structure");
    gen_cmd->add_option("--spec", spec_arg, "Jordan spec document (inline JSON or a file path)")
        ->required();
    gen_cmd->add_option("--seed", seed, "generator seed")->capture_default_str();
    gen_cmd->add_option("--count", gen_count, "number of matrices")->capture_default_str();

    CLI::App* bench_cmd = app.add_subcommand(
        "bench", "compare column extraction against the null-space solver (exact mode)");
    bench_cmd->add_option("--count", bench_count, "matrices per class")->capture_default_str();
    bench_cmd->add_option("--classes", classes_csv, "comma-separated class slugs, or all")
        ->capture_default_str();
    bench_cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    std::vector<std::string> argv_strings;
    argv_strings.push_back("cheigen");
    argv_strings.insert(argv_strings.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_strings) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(analyze_cmd))
            return cmd_analyze(input, in, out, mode_str, format, tolerance, cluster_eps);
        if (app.got_subcommand(charpoly_cmd))
            return cmd_charpoly(input, in, out, mode_str, format);
        if (app.got_subcommand(verify_cmd))
            return cmd_verify(input, in, out, mode_str, format, tolerance, cluster_eps);
        if (app.got_subcommand(gen_cmd)) return cmd_gen(spec_arg, in, out, seed, gen_count);
        if (app.got_subcommand(bench_cmd)) return cmd_bench(out, format, bench_count, classes_csv);
        err << "error: no subcommand\n";
        return 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace cheigen
