#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "cheigen/extract.hpp"
#include "cheigen/oracle.hpp"

namespace cheigen {

/// A matrix as exchanged over the wire: {"matrix": [[...], ...]} with an
/// optional "name". Exact entries are strings "p" or "p/q"; float entries
/// are JSON numbers. The two never mix within one document.
struct MatrixDocument {
    SmallMatrix matrix;
    std::optional<std::string> name;
};

/// Parse and validate a matrix document. ParseError on malformed JSON
/// (with byte position), ValidationError on shape or mode violations
/// (with row/column context). Fraction strings reduce on input, so
/// "-10/4" loads as -5/2.
MatrixDocument parse_matrix(const std::string& text);

/// Canonical byte-stable form: sorted keys, two-space indent, canonical
/// scalar strings, trailing newline. parse -> serialize round-trips
/// canonical input byte-identically.
std::string serialize_matrix(const MatrixDocument& doc);

/// One scalar in wire form: string for exact, number for float.
nlohmann::json scalar_to_json(const Scalar& s);
nlohmann::json vector_to_json(const SmallVector& v);
nlohmann::json matrix_to_json(const SmallMatrix& m);

/// Full analysis result as a deterministic JSON document. Field names are
/// fixed: spectrum, class, eigenspaces, chains, trace, verification (plus
/// input, mode, tolerance).
nlohmann::json result_document(const MatrixDocument& doc, const EigenStructure& es,
                               const VerificationReport& report, const TolerancePolicy& tol,
                               double cluster_eps);

/// Human-readable report; prints the extraction trace verbatim.
std::string render_text_report(const MatrixDocument& doc, const EigenStructure& es,
                               const VerificationReport& report);

/// Parse {"dim": 2|3, "blocks": [{"eigenvalue": scalar, "size": int},...]}
/// into a Jordan structure prescription. Eigenvalues must be exact
/// (strings or integral numbers).
oracle::JordanSpec parse_jordan_spec(const std::string& text);

} // namespace cheigen
