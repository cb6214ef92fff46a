#pragma once

#include <array>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>

#include "cheigen/scalar.hpp"

namespace cheigen {

/// Vector in R^2 or R^3. Every entry shares one arithmetic mode.
class SmallVector {
public:
    SmallVector(int dim, Mode mode);

    static SmallVector from_ints(std::initializer_list<long long> vals);
    static SmallVector from_doubles(std::initializer_list<double> vals);
    static SmallVector unit(int dim, int index, Mode mode);

    int dim() const { return dim_; }
    Mode mode() const { return mode_; }

    const Scalar& operator[](int i) const { return entries_[static_cast<size_t>(i)]; }
    Scalar& operator[](int i) { return entries_[static_cast<size_t>(i)]; }

    SmallVector to_mode(Mode m) const;

    SmallVector operator-() const;
    friend SmallVector operator+(const SmallVector& a, const SmallVector& b);
    friend SmallVector operator-(const SmallVector& a, const SmallVector& b);
    friend SmallVector operator*(const Scalar& c, const SmallVector& v);
    friend bool operator==(const SmallVector& a, const SmallVector& b);
    friend bool operator!=(const SmallVector& a, const SmallVector& b) { return !(a == b); }

    double max_abs_entry() const;
    std::string str() const; // "(1, -1, 2)"

private:
    int dim_;
    Mode mode_;
    std::array<Scalar, 3> entries_;
};

/// Square matrix of order 2 or 3, row-major, one arithmetic mode throughout.
class SmallMatrix {
public:
    SmallMatrix(int dim, Mode mode);

    static SmallMatrix from_ints(std::initializer_list<std::initializer_list<long long>> rows);
    static SmallMatrix from_doubles(std::initializer_list<std::initializer_list<double>> rows);
    static SmallMatrix identity(int dim, Mode mode);

    int dim() const { return dim_; }
    Mode mode() const { return mode_; }

    const Scalar& at(int i, int j) const { return entries_[static_cast<size_t>(i * dim_ + j)]; }
    Scalar& at(int i, int j) { return entries_[static_cast<size_t>(i * dim_ + j)]; }

    SmallVector col(int j) const;
    SmallVector row(int i) const;

    Scalar trace() const;
    Scalar det() const;
    double max_abs_entry() const;

    SmallMatrix to_mode(Mode m) const;

    friend SmallMatrix operator+(const SmallMatrix& a, const SmallMatrix& b);
    friend SmallMatrix operator-(const SmallMatrix& a, const SmallMatrix& b);
    friend SmallMatrix operator*(const SmallMatrix& a, const SmallMatrix& b);
    friend SmallVector operator*(const SmallMatrix& a, const SmallVector& v);
    friend SmallMatrix operator*(const Scalar& c, const SmallMatrix& a);
    friend bool operator==(const SmallMatrix& a, const SmallMatrix& b);
    friend bool operator!=(const SmallMatrix& a, const SmallMatrix& b) { return !(a == b); }

    std::string str() const; // "[[a, b], [c, d]]"

private:
    int dim_;
    Mode mode_;
    std::array<Scalar, 9> entries_;
};

/// Zero-test policy for float-mode data. Exact-mode tests ignore it and
/// compare against literal zero.
struct TolerancePolicy {
    double zero_threshold = 1e-9;
    bool relative = true;

    /// Absolute threshold for entries of data at the given magnitude scale.
    double effective(double scale) const {
        if (!relative) return zero_threshold;
        return zero_threshold * (scale > 1.0 ? scale : 1.0);
    }
    double effective(const SmallMatrix& context) const { return effective(context.max_abs_entry()); }
};

/// A - lambda * I.
SmallMatrix shift(const SmallMatrix& a, const Scalar& lambda);

bool is_zero_scalar(const Scalar& x, double eff);
bool is_zero_vector(const SmallVector& v, double eff);
bool is_zero_matrix(const SmallMatrix& m, double eff);

double norm2(const SmallVector& v);

/// First column that is not zero under the threshold, with its index.
std::optional<std::pair<int, SmallVector>> first_nonzero_column(const SmallMatrix& m, double eff);

/// Nonzero column of largest Euclidean norm (ties break to the lower index).
std::optional<std::pair<int, SmallVector>> best_column(const SmallMatrix& m, double eff);

/// Column pick used by the extraction pipeline: first nonzero column in
/// exact mode, largest-norm column in float mode.
std::optional<std::pair<int, SmallVector>> chosen_column(const SmallMatrix& m, double eff);

/// Canonical representative of the ray through v. Exact mode scales to
/// coprime integers with positive leading entry; float mode scales to unit
/// Euclidean norm with the same sign convention. Throws ZeroVector on zero.
SmallVector normalize_eigenvector(const SmallVector& v);

} // namespace cheigen
