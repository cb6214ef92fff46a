#include "cheigen/matrix.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdlib>

namespace cheigen {

namespace {

void require_dim(int dim) {
    if (dim != 2 && dim != 3) throw DimensionMismatch("dimension must be 2 or 3");
}

void require_match(const SmallVector& a, const SmallVector& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("vector dimensions differ");
    if (a.mode() != b.mode()) throw ModeMismatch("vector modes differ");
}

void require_match(const SmallMatrix& a, const SmallMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("matrix dimensions differ");
    if (a.mode() != b.mode()) throw ModeMismatch("matrix modes differ");
}

} // namespace

SmallVector::SmallVector(int dim, Mode mode) : dim_(dim), mode_(mode) {
    require_dim(dim);
    for (auto& e : entries_) e = Scalar::zero(mode);
}

SmallVector SmallVector::from_ints(std::initializer_list<long long> vals) {
    SmallVector v(static_cast<int>(vals.size()), Mode::Exact);
    int i = 0;
    for (long long x : vals) v[i++] = Scalar::exact(x);
    return v;
}

SmallVector SmallVector::from_doubles(std::initializer_list<double> vals) {
    SmallVector v(static_cast<int>(vals.size()), Mode::Float);
    int i = 0;
    for (double x : vals) v[i++] = Scalar::floating(x);
    return v;
}

SmallVector SmallVector::unit(int dim, int index, Mode mode) {
    SmallVector v(dim, mode);
    if (index < 0 || index >= dim) throw DimensionMismatch("unit vector index out of range");
    v[index] = Scalar::one(mode);
    return v;
}

SmallVector SmallVector::to_mode(Mode m) const {
    SmallVector v(dim_, m);
    for (int i = 0; i < dim_; ++i) v[i] = (*this)[i].to_mode(m);
    return v;
}

SmallVector SmallVector::operator-() const {
    SmallVector v(dim_, mode_);
    for (int i = 0; i < dim_; ++i) v[i] = -(*this)[i];
    return v;
}

SmallVector operator+(const SmallVector& a, const SmallVector& b) {
    require_match(a, b);
    SmallVector v(a.dim_, a.mode_);
    for (int i = 0; i < a.dim_; ++i) v[i] = a[i] + b[i];
    return v;
}

SmallVector operator-(const SmallVector& a, const SmallVector& b) {
    require_match(a, b);
    SmallVector v(a.dim_, a.mode_);
    for (int i = 0; i < a.dim_; ++i) v[i] = a[i] - b[i];
    return v;
}

SmallVector operator*(const Scalar& c, const SmallVector& v) {
    SmallVector r(v.dim_, v.mode_);
    for (int i = 0; i < v.dim_; ++i) r[i] = c * v[i];
    return r;
}

bool operator==(const SmallVector& a, const SmallVector& b) {
    require_match(a, b);
    for (int i = 0; i < a.dim_; ++i)
        if (a[i] != b[i]) return false;
    return true;
}

double SmallVector::max_abs_entry() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i) {
        double x = std::fabs((*this)[i].to_double());
        if (x > m) m = x;
    }
    return m;
}

std::string SmallVector::str() const {
    std::string s = "(";
    for (int i = 0; i < dim_; ++i) {
        if (i) s += ", ";
        s += (*this)[i].str();
    }
    s += ")";
    return s;
}

SmallMatrix::SmallMatrix(int dim, Mode mode) : dim_(dim), mode_(mode) {
    require_dim(dim);
    for (auto& e : entries_) e = Scalar::zero(mode);
}

SmallMatrix SmallMatrix::from_ints(std::initializer_list<std::initializer_list<long long>> rows) {
    SmallMatrix m(static_cast<int>(rows.size()), Mode::Exact);
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != m.dim_)
            throw DimensionMismatch("matrix rows must match the order");
        int j = 0;
        for (long long x : row) m.at(i, j++) = Scalar::exact(x);
        ++i;
    }
    return m;
}

SmallMatrix SmallMatrix::from_doubles(std::initializer_list<std::initializer_list<double>> rows) {
    SmallMatrix m(static_cast<int>(rows.size()), Mode::Float);
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != m.dim_)
            throw DimensionMismatch("matrix rows must match the order");
        int j = 0;
        for (double x : row) m.at(i, j++) = Scalar::floating(x);
        ++i;
    }
    return m;
}

SmallMatrix SmallMatrix::identity(int dim, Mode mode) {
    SmallMatrix m(dim, mode);
    for (int i = 0; i < dim; ++i) m.at(i, i) = Scalar::one(mode);
    return m;
}

SmallVector SmallMatrix::col(int j) const {
    SmallVector v(dim_, mode_);
    for (int i = 0; i < dim_; ++i) v[i] = at(i, j);
    return v;
}

SmallVector SmallMatrix::row(int i) const {
    SmallVector v(dim_, mode_);
    for (int j = 0; j < dim_; ++j) v[j] = at(i, j);
    return v;
}

Scalar SmallMatrix::trace() const {
    Scalar t = Scalar::zero(mode_);
    for (int i = 0; i < dim_; ++i) t = t + at(i, i);
    return t;
}

Scalar SmallMatrix::det() const {
    if (dim_ == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    Scalar d = at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1));
    d = d - at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0));
    d = d + at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    return d;
}

double SmallMatrix::max_abs_entry() const {
    double m = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) {
            double x = std::fabs(at(i, j).to_double());
            if (x > m) m = x;
        }
    return m;
}

SmallMatrix SmallMatrix::to_mode(Mode m) const {
    SmallMatrix r(dim_, m);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) r.at(i, j) = at(i, j).to_mode(m);
    return r;
}

SmallMatrix operator+(const SmallMatrix& a, const SmallMatrix& b) {
    require_match(a, b);
    SmallMatrix r(a.dim_, a.mode_);
    for (int i = 0; i < a.dim_; ++i)
        for (int j = 0; j < a.dim_; ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
    return r;
}

SmallMatrix operator-(const SmallMatrix& a, const SmallMatrix& b) {
    require_match(a, b);
    SmallMatrix r(a.dim_, a.mode_);
    for (int i = 0; i < a.dim_; ++i)
        for (int j = 0; j < a.dim_; ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
    return r;
}

SmallMatrix operator*(const SmallMatrix& a, const SmallMatrix& b) {
    require_match(a, b);
    SmallMatrix r(a.dim_, a.mode_);
    for (int i = 0; i < a.dim_; ++i)
        for (int j = 0; j < a.dim_; ++j) {
            Scalar s = Scalar::zero(a.mode_);
            for (int k = 0; k < a.dim_; ++k) s = s + a.at(i, k) * b.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

SmallVector operator*(const SmallMatrix& a, const SmallVector& v) {
    if (a.dim() != v.dim()) throw DimensionMismatch("matrix and vector dimensions differ");
    if (a.mode() != v.mode()) throw ModeMismatch("matrix and vector modes differ");
    SmallVector r(a.dim_, a.mode_);
    for (int i = 0; i < a.dim_; ++i) {
        Scalar s = Scalar::zero(a.mode_);
        for (int j = 0; j < a.dim_; ++j) s = s + a.at(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

SmallMatrix operator*(const Scalar& c, const SmallMatrix& a) {
    SmallMatrix r(a.dim_, a.mode_);
    for (int i = 0; i < a.dim_; ++i)
        for (int j = 0; j < a.dim_; ++j) r.at(i, j) = c * a.at(i, j);
    return r;
}

bool operator==(const SmallMatrix& a, const SmallMatrix& b) {
    require_match(a, b);
    for (int i = 0; i < a.dim_; ++i)
        for (int j = 0; j < a.dim_; ++j)
            if (a.at(i, j) != b.at(i, j)) return false;
    return true;
}

std::string SmallMatrix::str() const {
    std::string s = "[";
    for (int i = 0; i < dim_; ++i) {
        if (i) s += ", ";
        s += "[";
        for (int j = 0; j < dim_; ++j) {
            if (j) s += ", ";
            s += at(i, j).str();
        }
        s += "]";
    }
    s += "]";
    return s;
}

SmallMatrix shift(const SmallMatrix& a, const Scalar& lambda) {
    if (a.mode() != lambda.mode()) throw ModeMismatch("shift value mode differs from matrix mode");
    SmallMatrix r = a;
    for (int i = 0; i < a.dim(); ++i) r.at(i, i) = r.at(i, i) - lambda;
    return r;
}

bool is_zero_scalar(const Scalar& x, double eff) {
    if (x.is_exact()) return x.is_zero();
    return std::fabs(x.flt()) <= eff;
}

bool is_zero_vector(const SmallVector& v, double eff) {
    for (int i = 0; i < v.dim(); ++i)
        if (!is_zero_scalar(v[i], eff)) return false;
    return true;
}

bool is_zero_matrix(const SmallMatrix& m, double eff) {
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
            if (!is_zero_scalar(m.at(i, j), eff)) return false;
    return true;
}

double norm2(const SmallVector& v) {
    double s = 0.0;
    for (int i = 0; i < v.dim(); ++i) {
        double x = v[i].to_double();
        s += x * x;
    }
    return std::sqrt(s);
}

std::optional<std::pair<int, SmallVector>> first_nonzero_column(const SmallMatrix& m, double eff) {
    for (int j = 0; j < m.dim(); ++j) {
        SmallVector c = m.col(j);
        if (!is_zero_vector(c, eff)) return std::make_pair(j, std::move(c));
    }
    return std::nullopt;
}

std::optional<std::pair<int, SmallVector>> best_column(const SmallMatrix& m, double eff) {
    int best = -1;
    double best_norm = -1.0;
    for (int j = 0; j < m.dim(); ++j) {
        SmallVector c = m.col(j);
        if (is_zero_vector(c, eff)) continue;
        double n = norm2(c);
        if (n > best_norm) {
            best_norm = n;
            best = j;
        }
    }
    if (best < 0) return std::nullopt;
    return std::make_pair(best, m.col(best));
}

std::optional<std::pair<int, SmallVector>> chosen_column(const SmallMatrix& m, double eff) {
    return m.mode() == Mode::Exact ? first_nonzero_column(m, eff) : best_column(m, eff);
}

namespace {

SmallVector normalize_exact(const SmallVector& v) {
    namespace mp = boost::multiprecision;
    BigInt num_gcd = 0;
    BigInt den_lcm = 1;
    for (int i = 0; i < v.dim(); ++i) {
        const Rational& r = v[i].rat();
        if (r.is_zero()) continue;
        num_gcd = mp::gcd(num_gcd, mp::abs(r.num()));
        den_lcm = mp::lcm(den_lcm, r.den());
    }
    if (num_gcd == 0) throw ZeroVector("cannot normalize the zero vector");
    Scalar factor = Scalar::exact(Rational(den_lcm, num_gcd));
    SmallVector r = factor * v;
    for (int i = 0; i < r.dim(); ++i) {
        int s = r[i].sign();
        if (s == 0) continue;
        if (s < 0) r = -r;
        break;
    }
    return r;
}

SmallVector normalize_float(const SmallVector& v) {
    double n = norm2(v);
    if (n == 0.0) throw ZeroVector("cannot normalize the zero vector");
    SmallVector r = Scalar::floating(1.0 / n) * v;
    // Sign from the first entry that is clearly nonzero, so roundoff dust
    // in a leading slot cannot flip the representative.
    double cutoff = 1e-12 * r.max_abs_entry();
    for (int i = 0; i < r.dim(); ++i) {
        double x = r[i].flt();
        if (std::fabs(x) <= cutoff) continue;
        if (x < 0.0) r = -r;
        break;
    }
    return r;
}

} // namespace

SmallVector normalize_eigenvector(const SmallVector& v) {
    return v.mode() == Mode::Exact ? normalize_exact(v) : normalize_float(v);
}

} // namespace cheigen
