#include "cheigen/json_io.hpp"

#include <cctype>

namespace cheigen {

namespace {

bool valid_integer_token(const std::string& s) {
    size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Rational parse_rational_token(const std::string& tok, const std::string& where) {
    size_t slash = tok.find('/');
    std::string num = slash == std::string::npos ? tok : tok.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : tok.substr(slash + 1);
    if (!valid_integer_token(num) || !valid_integer_token(den))
        throw ValidationError(where + ": \"" + tok + "\" is not an integer or a fraction \"p/q\"");
    BigInt d(den);
    if (d == 0) throw ValidationError(where + ": zero denominator in \"" + tok + "\"");
    return Rational(BigInt(num), std::move(d));
}

} // namespace

MatrixDocument parse_matrix(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("matrix"))
        throw ValidationError("document must be a JSON object with a \"matrix\" field");
    const auto& rows = j["matrix"];
    if (!rows.is_array() || (rows.size() != 2 && rows.size() != 3))
        throw ValidationError("\"matrix\" must be an array of 2 or 3 rows");
    int dim = static_cast<int>(rows.size());

    bool any_float = false, any_exact = false;
    for (int i = 0; i < dim; ++i) {
        const auto& row = rows[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw ValidationError("row " + std::to_string(i) + " must have exactly " +
                                  std::to_string(dim) + " entries");
        for (int c = 0; c < dim; ++c) {
            const auto& e = row[static_cast<size_t>(c)];
            if (e.is_number())
                any_float = true;
            else if (e.is_string())
                any_exact = true;
            else
                throw ValidationError("row " + std::to_string(i) + ", column " + std::to_string(c) +
                                      ": entries must be numbers or fraction strings");
        }
    }
    if (any_float && any_exact)
        throw ValidationError("matrix mixes number and string entries; the mode must be homogeneous");

    Mode mode = any_exact ? Mode::Exact : Mode::Float;
    SmallMatrix a(dim, mode);
    for (int i = 0; i < dim; ++i)
        for (int c = 0; c < dim; ++c) {
            const auto& e = rows[static_cast<size_t>(i)][static_cast<size_t>(c)];
            a.at(i, c) = mode == Mode::Exact
                             ? Scalar::exact(parse_rational_token(
                                   e.get<std::string>(),
                                   "row " + std::to_string(i) + ", column " + std::to_string(c)))
                             : Scalar::floating(e.get<double>());
        }

    MatrixDocument doc{std::move(a), std::nullopt};
    if (j.contains("name")) {
        if (!j["name"].is_string()) throw ValidationError("\"name\" must be a string");
        doc.name = j["name"].get<std::string>();
    }
    return doc;
}

nlohmann::json scalar_to_json(const Scalar& s) {
    if (s.is_exact()) return s.rat().str();
    return s.flt();
}

nlohmann::json vector_to_json(const SmallVector& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (int i = 0; i < v.dim(); ++i) arr.push_back(scalar_to_json(v[i]));
    return arr;
}

nlohmann::json matrix_to_json(const SmallMatrix& m) {
    nlohmann::json arr = nlohmann::json::array();
    for (int i = 0; i < m.dim(); ++i) arr.push_back(vector_to_json(m.row(i)));
    return arr;
}

std::string serialize_matrix(const MatrixDocument& doc) {
    nlohmann::json j;
    j["matrix"] = matrix_to_json(doc.matrix);
    if (doc.name) j["name"] = *doc.name;
    return j.dump(2) + "\n";
}

nlohmann::json result_document(const MatrixDocument& doc, const EigenStructure& es,
                               const VerificationReport& report, const TolerancePolicy& tol,
                               double cluster_eps) {
    nlohmann::json j;
    j["input"]["matrix"] = matrix_to_json(doc.matrix);
    if (doc.name) j["input"]["name"] = *doc.name;
    j["mode"] = mode_name(es.mode);
    j["tolerance"] = {{"zero_threshold", tol.zero_threshold},
                      {"relative", tol.relative},
                      {"cluster_eps", cluster_eps}};
    j["class"] = es.cls.label();

    j["spectrum"] = nlohmann::json::array();
    j["eigenspaces"] = nlohmann::json::array();
    j["chains"] = nlohmann::json::array();
    for (const auto& rec : es.records) {
        j["spectrum"].push_back({{"eigenvalue", scalar_to_json(rec.eigenvalue)},
                                 {"algebraic", rec.algebraic},
                                 {"geometric", rec.geometric}});
        nlohmann::json basis = nlohmann::json::array();
        for (const auto& v : rec.basis) basis.push_back(vector_to_json(v));
        j["eigenspaces"].push_back(
            {{"eigenvalue", scalar_to_json(rec.eigenvalue)}, {"basis", basis}});
        for (const auto& ch : rec.chains) {
            nlohmann::json vecs = nlohmann::json::array();
            for (const auto& v : ch.vectors) vecs.push_back(vector_to_json(v));
            j["chains"].push_back(
                {{"eigenvalue", scalar_to_json(ch.eigenvalue)}, {"vectors", vecs}});
        }
    }

    j["trace"] = nlohmann::json::array();
    for (const auto& line : es.trace.lines()) j["trace"].push_back(line);

    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"residual", c.residual}});
    j["verification"] = {{"all_passed", report.all_passed()},
                         {"max_residual", report.max_residual()},
                         {"checks", checks}};
    return j;
}

std::string render_text_report(const MatrixDocument& doc, const EigenStructure& es,
                               const VerificationReport& report) {
    std::string out;
    out += "matrix: " + doc.matrix.str() + "  (" + std::to_string(es.matrix_dim) + "x" +
           std::to_string(es.matrix_dim) + ", " + mode_name(es.mode) + ")\n";
    if (doc.name) out += "name: " + *doc.name + "\n";
    out += "class: " + es.cls.label() + "\n";
    out += "spectrum:\n";
    for (const auto& rec : es.records) {
        out += "  lambda = " + rec.eigenvalue.str() + " (algebraic " +
               std::to_string(rec.algebraic) + ", geometric " + std::to_string(rec.geometric) +
               ")\n";
        out += "    basis:";
        for (const auto& v : rec.basis) out += " " + v.str();
        out += "\n";
        for (const auto& ch : rec.chains) {
            out += "    chain: ";
            for (size_t k = 0; k < ch.vectors.size(); ++k) {
                if (k) out += " <- ";
                out += ch.vectors[k].str();
            }
            out += "\n";
        }
    }
    out += "trace:\n";
    for (const auto& line : es.trace.lines()) out += "  - " + line + "\n";
    if (report.all_passed()) {
        out += "verification: all checks passed (max residual " +
               double_str(report.max_residual()) + ")\n";
    } else {
        int failed = 0;
        for (const auto& c : report.checks) failed += c.passed ? 0 : 1;
        out += "verification: " + std::to_string(failed) + " check(s) FAILED\n";
        for (const auto& c : report.checks)
            if (!c.passed)
                out += "  FAILED " + c.name + " (residual " + double_str(c.residual) + ")\n";
    }
    return out;
}

oracle::JordanSpec parse_jordan_spec(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("blocks"))
        throw ValidationError("Jordan spec must be an object with \"dim\" and \"blocks\"");
    if (!j["dim"].is_number_integer())
        throw ValidationError("\"dim\" must be an integer");
    oracle::JordanSpec spec;
    spec.dim = j["dim"].get<int>();
    if (!j["blocks"].is_array() || j["blocks"].empty())
        throw ValidationError("\"blocks\" must be a nonempty array");
    int index = 0;
    for (const auto& b : j["blocks"]) {
        std::string where = "block " + std::to_string(index);
        if (!b.is_object() || !b.contains("eigenvalue") || !b.contains("size"))
            throw ValidationError(where + " must be an object with \"eigenvalue\" and \"size\"");
        Scalar ev = Scalar::exact(0);
        const auto& evj = b["eigenvalue"];
        if (evj.is_string())
            ev = Scalar::exact(parse_rational_token(evj.get<std::string>(), where));
        else if (evj.is_number_integer())
            ev = Scalar::exact(evj.get<long long>());
        else
            throw ValidationError(where + ": eigenvalue must be an integer or a fraction string");
        if (!b["size"].is_number_integer() || b["size"].get<int>() < 1)
            throw ValidationError(where + ": size must be a positive integer");
        spec.blocks.push_back({ev, b["size"].get<int>()});
        ++index;
    }
    return spec;
}

} // namespace cheigen
