#pragma once

#include <string>
#include <vector>

#include "cheigen/matrix.hpp"
#include "cheigen/trace.hpp"

namespace cheigen {

/// Monic characteristic polynomial. Coefficients are stored constant-first:
/// coeffs[k] multiplies lambda^k and coeffs[degree] is exactly 1.
class CharPoly {
public:
    CharPoly(Mode mode, std::vector<Scalar> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Mode mode() const { return mode_; }
    const std::vector<Scalar>& coeffs() const { return coeffs_; }
    const Scalar& coeff(int k) const { return coeffs_[static_cast<size_t>(k)]; }

    Scalar eval(const Scalar& x) const;
    SmallMatrix eval_matrix(const SmallMatrix& a) const;

    std::string str() const; // "lambda^2 - 9*lambda + 18"

private:
    Mode mode_;
    std::vector<Scalar> coeffs_;
};

/// det(lambda*I - A) as a monic polynomial of degree dim(A).
CharPoly char_poly(const SmallMatrix& a);

/// Eigenvalues with algebraic multiplicities, sorted ascending; the
/// multiplicities always sum to the matrix dimension.
class Spectrum {
public:
    struct Entry {
        Scalar value;
        int multiplicity;
    };

    Spectrum(int dim, std::vector<Entry> entries);

    int dim() const { return dim_; }
    Mode mode() const { return mode_; }
    const std::vector<Entry>& entries() const { return entries_; }
    int size() const { return static_cast<int>(entries_.size()); }
    const Entry& entry(int i) const { return entries_[static_cast<size_t>(i)]; }

private:
    int dim_;
    Mode mode_;
    std::vector<Entry> entries_;
};

/// All roots of an exact polynomial by the rational-root method: clear
/// denominators, trial candidates +-(divisor of constant)/(divisor of
/// leading), deflate on each hit. Throws IrrationalSpectrum when a real
/// root is not rational and ComplexSpectrum when a remaining quadratic
/// factor has negative discriminant.
Spectrum eigenvalues_exact(const CharPoly& p);

/// All real roots of a float polynomial by closed forms: stable quadratic
/// formula; depressed cubic via the trigonometric branch (three real roots)
/// or Cardano (one real root). Roots within cluster_eps * max(1, |largest|)
/// of each other merge into one entry (value = mean, multiplicity = size).
Spectrum eigenvalues_float(const CharPoly& p, const TolerancePolicy& tol,
                           double cluster_eps = 1e-6);

enum class ClassKind { Distinct2, Double2, Distinct3, SimplePlusDouble, Triple };

/// Multiplicity structure driving extraction dispatch. geo is the geometric
/// multiplicity of the repeated eigenvalue; 1 for the all-distinct kinds.
struct SpectralClass {
    ClassKind kind;
    int geo = 1;

    std::string label() const; // "SimplePlusDouble(geo 2)"
    std::string slug() const;  // "simple-double-geo2"

    friend bool operator==(const SpectralClass&, const SpectralClass&) = default;
};

/// Every class a 2x2 or 3x3 real matrix with rational spectrum can have.
std::vector<SpectralClass> all_spectral_classes();

/// Determine the class from the spectrum plus zero tests of shifted-matrix
/// products only; no rank computation or elimination is involved. The
/// optional trace records each product tested and its outcome.
SpectralClass classify(const SmallMatrix& a, const Spectrum& spec, const TolerancePolicy& tol,
                       ExtractionTrace* trace = nullptr);

} // namespace cheigen
