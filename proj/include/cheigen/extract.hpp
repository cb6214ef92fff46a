#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cheigen/spectrum.hpp"

namespace cheigen {

/// Jordan chain [v, w, ...]: v is an eigenvector and (A - lambda*I) maps
/// every later vector to its predecessor. Vectors after the first are kept
/// exactly as produced (not rescaled) so the chain identities hold literally.
struct JordanChain {
    Scalar eigenvalue;
    std::vector<SmallVector> vectors;
};

/// Everything extracted for one eigenvalue.
struct EigenRecord {
    Scalar eigenvalue;
    int algebraic;
    int geometric;
    std::vector<SmallVector> basis;
    std::vector<JordanChain> chains;
};

/// Structure of a nonzero nilpotent B (B^2 = 0) read off its column
/// zero-pattern. case_id 1, 2, 3 marks the first nonzero column 0, 1, 2;
/// t and s are the proportionality ratios of the later columns to the
/// pivot (absent where the case has none), and condition_value is the
/// consistency expression that must vanish for the case to be accepted.
struct ColumnCaseProfile {
    int case_id;
    SmallVector pivot_column;
    std::optional<Scalar> t;
    std::optional<Scalar> s;
    Scalar condition_value;

    /// The two eigenvectors the case yields, exactly as constructed:
    /// case 1 -> {(-t,1,0), (-s,0,1)}; case 2 -> {(0,-t,1), e1};
    /// case 3 -> {e1, e2}.
    std::vector<SmallVector> eigenbasis() const;

    /// Index of the standard basis vector that is a generalized
    /// eigenvector for the pivot column (case_id - 1).
    int generalized_unit_index() const { return case_id - 1; }
};

/// Read the column structure of a nonzero nilpotent 3x3 matrix. Throws
/// ZeroMatrixError on B = 0 and NotNilpotent when column proportionality
/// or the case condition fails (then B^2 != 0).
ColumnCaseProfile column_case_profile(const SmallMatrix& b, const TolerancePolicy& tol = {});

/// Complete eigenstructure: per-eigenvalue records plus the decision trace.
/// profile is set exactly when the class is Triple(geo 2).
struct EigenStructure {
    int matrix_dim;
    Mode mode;
    SpectralClass cls;
    std::vector<EigenRecord> records;
    ExtractionTrace trace;
    std::optional<ColumnCaseProfile> profile;
};

/// Per-class extraction ops. Each one re-derives the class from (A, spec)
/// and throws ClassMismatch when it is not the expected one. Eigenvectors
/// come from columns of products of shifted matrices only.
EigenStructure extract_2x2_distinct(const SmallMatrix& a, const Spectrum& spec,
                                    const TolerancePolicy& tol = {});
EigenStructure extract_2x2_double(const SmallMatrix& a, const Spectrum& spec,
                                  const TolerancePolicy& tol = {});
EigenStructure extract_3x3_distinct(const SmallMatrix& a, const Spectrum& spec,
                                    const TolerancePolicy& tol = {});
EigenStructure extract_3x3_simple_double(const SmallMatrix& a, const Spectrum& spec,
                                         const TolerancePolicy& tol = {});
EigenStructure extract_3x3_triple(const SmallMatrix& a, const Spectrum& spec,
                                  const TolerancePolicy& tol = {});

/// Full pipeline: characteristic polynomial, eigenvalues (mode-appropriate),
/// classification, then the matching extract op. No step solves a linear
/// system; every eigenvector is a column of a product of shifted matrices.
EigenStructure analyze(const SmallMatrix& a, const TolerancePolicy& tol = {},
                       double cluster_eps = 1e-6);

/// One named check with its residual magnitude.
struct CheckResult {
    std::string name;
    bool passed;
    double residual;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    double max_residual() const {
        double m = 0.0;
        for (const auto& c : checks)
            if (c.residual > m) m = c.residual;
        return m;
    }
};

/// Re-derive every claimed identity directly against A: eigen-residuals
/// A v = lambda v, chain links (A - lambda I) vectors[k] = vectors[k-1],
/// and linear independence of each eigenspace basis. Exact mode demands
/// exact zeros; float mode compares against the tolerance policy.
VerificationReport verify_structure(const SmallMatrix& a, const EigenStructure& es,
                                    const TolerancePolicy& tol = {});

} // namespace cheigen
