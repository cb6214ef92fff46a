#include "cheigen/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace cheigen {

namespace mp = boost::multiprecision;

CharPoly::CharPoly(Mode mode, std::vector<Scalar> coeffs) : mode_(mode), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != 3 && coeffs_.size() != 4)
        throw DimensionMismatch("characteristic polynomial degree must be 2 or 3");
    for (const auto& c : coeffs_)
        if (c.mode() != mode_) throw ModeMismatch("polynomial coefficients mix modes");
    if (!(coeffs_.back() == Scalar::one(mode_)))
        throw Error("characteristic polynomial must be monic");
}

Scalar CharPoly::eval(const Scalar& x) const {
    Scalar acc = coeffs_.back();
    for (int k = degree() - 1; k >= 0; --k) acc = acc * x + coeff(k);
    return acc;
}

SmallMatrix CharPoly::eval_matrix(const SmallMatrix& a) const {
    if (a.dim() != degree()) throw DimensionMismatch("matrix order does not match polynomial degree");
    if (a.mode() != mode_) throw ModeMismatch("matrix mode does not match polynomial mode");
    SmallMatrix r = SmallMatrix::identity(a.dim(), mode_);
    for (int k = degree() - 1; k >= 0; --k) {
        r = r * a;
        for (int i = 0; i < a.dim(); ++i) r.at(i, i) = r.at(i, i) + coeff(k);
    }
    return r;
}

std::string CharPoly::str() const {
    std::string s;
    for (int k = degree(); k >= 0; --k) {
        const Scalar& c = coeff(k);
        if (c.is_zero() && k != degree()) continue;
        bool neg = c.sign() < 0;
        if (s.empty()) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        Scalar mag = c.abs();
        if (k == 0) {
            s += mag.str();
        } else {
            if (!(mag == Scalar::one(mode_))) {
                s += mag.str();
                s += "*";
            }
            s += (k == 1) ? "lambda" : "lambda^" + std::to_string(k);
        }
    }
    return s;
}

CharPoly char_poly(const SmallMatrix& a) {
    Mode m = a.mode();
    if (a.dim() == 2) return CharPoly(m, {a.det(), -a.trace(), Scalar::one(m)});
    // det(lambda I - A) = lambda^3 - tr(A) lambda^2 + m2(A) lambda - det(A),
    // m2 = sum of the principal 2x2 minors.
    Scalar m2 = (a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0)) +
                (a.at(0, 0) * a.at(2, 2) - a.at(0, 2) * a.at(2, 0)) +
                (a.at(1, 1) * a.at(2, 2) - a.at(1, 2) * a.at(2, 1));
    return CharPoly(m, {-a.det(), m2, -a.trace(), Scalar::one(m)});
}

Spectrum::Spectrum(int dim, std::vector<Entry> entries) : dim_(dim), entries_(std::move(entries)) {
    if (dim_ != 2 && dim_ != 3) throw DimensionMismatch("spectrum dimension must be 2 or 3");
    if (entries_.empty()) throw InconsistentSpectrum("spectrum has no entries");
    mode_ = entries_.front().value.mode();
    int sum = 0;
    for (const auto& e : entries_) {
        if (e.value.mode() != mode_) throw ModeMismatch("spectrum entries mix modes");
        if (e.multiplicity <= 0) throw InconsistentSpectrum("algebraic multiplicity must be positive");
        sum += e.multiplicity;
    }
    if (sum != dim_)
        throw InconsistentSpectrum("multiplicities sum to " + std::to_string(sum) +
                                   ", expected " + std::to_string(dim_));
    std::sort(entries_.begin(), entries_.end(),
              [](const Entry& a, const Entry& b) { return a.value < b.value; });
    for (size_t i = 1; i < entries_.size(); ++i)
        if (!(entries_[i - 1].value < entries_[i].value))
            throw InconsistentSpectrum("eigenvalue entries are not pairwise distinct");
}

namespace {

Rational poly_eval(const std::vector<Rational>& c, const Rational& x) {
    Rational acc = c.back();
    for (size_t k = c.size() - 1; k-- > 0;) acc = acc * x + c[k];
    return acc;
}

// Quotient of a monic polynomial by (x - r); the remainder is the caller's
// business (zero when r is a root).
std::vector<Rational> deflate(const std::vector<Rational>& c, const Rational& r) {
    size_t n = c.size() - 1;
    std::vector<Rational> q(n);
    q[n - 1] = c[n];
    for (size_t k = n - 1; k >= 1; --k) q[k - 1] = c[k] + r * q[k];
    return q;
}

// All positive divisors by trial division. The cap bounds the scan on
// adversarially large constants; divisors whose smallest cofactor exceeds
// the cap are then missed, which only narrows the candidate list.
std::vector<BigInt> divisors_of(const BigInt& n) {
    static const BigInt cap = 10000000;
    std::vector<BigInt> divs;
    for (BigInt d = 1; d * d <= n && d <= cap; ++d) {
        if (n % d == 0) {
            divs.push_back(d);
            divs.push_back(n / d);
        }
    }
    std::sort(divs.begin(), divs.end());
    divs.erase(std::unique(divs.begin(), divs.end()), divs.end());
    return divs;
}

// Rational-root candidates of a monic rational polynomial: clear
// denominators, then +-p/q with p | constant and q | leading.
std::vector<Rational> rational_root_candidates(const std::vector<Rational>& monic) {
    BigInt lead = 1;
    for (const auto& c : monic) lead = mp::lcm(lead, c.den());
    BigInt constant = mp::abs(monic.front().num() * (lead / monic.front().den()));
    std::vector<Rational> cands;
    for (const auto& p : divisors_of(constant))
        for (const auto& q : divisors_of(lead)) {
            Rational r(p, q);
            cands.push_back(r);
            cands.push_back(-r);
        }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    return cands;
}

bool is_perfect_square(const BigInt& n, BigInt& root) {
    root = mp::sqrt(n);
    return root * root == n;
}

// Terminal quadratic x^2 + bx + c: rational roots exist iff the
// discriminant is a perfect rational square.
void solve_quadratic_exact(const Rational& b, const Rational& c, std::vector<Rational>& roots) {
    Rational disc = b * b - Rational(4) * c;
    if (disc.sign() < 0)
        throw ComplexSpectrum("quadratic factor has negative discriminant: complex eigenvalue pair");
    Rational half_b = b / Rational(2);
    if (disc.is_zero()) {
        roots.push_back(-half_b);
        roots.push_back(-half_b);
        return;
    }
    BigInt sn, sd;
    if (is_perfect_square(disc.num(), sn) && is_perfect_square(disc.den(), sd)) {
        Rational s(sn, sd);
        roots.push_back(-half_b - s / Rational(2));
        roots.push_back(-half_b + s / Rational(2));
        return;
    }
    throw IrrationalSpectrum(
        "quadratic factor has a non-square discriminant: irrational eigenvalues; use float mode");
}

Spectrum roots_to_spectrum(int dim, std::vector<Rational> roots) {
    std::sort(roots.begin(), roots.end());
    std::vector<Spectrum::Entry> entries;
    for (size_t i = 0; i < roots.size();) {
        size_t j = i;
        while (j < roots.size() && roots[j] == roots[i]) ++j;
        entries.push_back({Scalar::exact(roots[i]), static_cast<int>(j - i)});
        i = j;
    }
    return Spectrum(dim, std::move(entries));
}

} // namespace

Spectrum eigenvalues_exact(const CharPoly& p) {
    if (p.mode() != Mode::Exact) throw ModeMismatch("exact eigenvalue extraction needs an exact polynomial");
    std::vector<Rational> work;
    for (const auto& c : p.coeffs()) work.push_back(c.rat());
    std::vector<Rational> roots;
    while (work.size() > 1) {
        size_t deg = work.size() - 1;
        if (deg == 1) {
            roots.push_back(-work[0]);
            break;
        }
        if (work[0].is_zero()) {
            roots.push_back(Rational());
            work = deflate(work, Rational());
            continue;
        }
        if (deg == 2) {
            solve_quadratic_exact(work[1], work[0], roots);
            break;
        }
        bool hit = false;
        for (const auto& cand : rational_root_candidates(work)) {
            if (poly_eval(work, cand).is_zero()) {
                roots.push_back(cand);
                work = deflate(work, cand);
                hit = true;
                break;
            }
        }
        if (!hit)
            throw IrrationalSpectrum(
                "cubic has no rational root: irrational eigenvalue; use float mode");
    }
    return roots_to_spectrum(p.degree(), std::move(roots));
}

namespace {

void solve_quadratic_float(double b, double c, const TolerancePolicy& tol, std::vector<double>& roots) {
    double disc = b * b - 4.0 * c;
    double clamp = tol.zero_threshold * std::max({1.0, b * b, std::fabs(c)});
    if (disc < -clamp)
        throw ComplexSpectrum("quadratic discriminant is negative beyond tolerance: complex pair");
    if (disc < 0.0) disc = 0.0;
    double sd = std::sqrt(disc);
    if (b == 0.0 && sd == 0.0) {
        roots.push_back(0.0);
        roots.push_back(0.0);
        return;
    }
    // Sign-aware form: no cancellation in the larger root.
    double q = -(b + std::copysign(sd, b)) / 2.0;
    roots.push_back(q);
    roots.push_back(c / q);
}

void solve_cubic_float(double a, double b, double c, double cluster_eps, std::vector<double>& roots) {
    double q = (a * a - 3.0 * b) / 9.0;
    double r = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 54.0;
    double q3 = q * q * q;
    if (r * r < q3) {
        // Three real roots, numerically stable near coalescence.
        double ratio = r / std::sqrt(q3);
        ratio = std::clamp(ratio, -1.0, 1.0);
        double theta = std::acos(ratio);
        static const double two_pi = 6.283185307179586476925287;
        for (int k = 0; k < 3; ++k)
            roots.push_back(-2.0 * std::sqrt(q) * std::cos((theta + two_pi * k) / 3.0) - a / 3.0);
        return;
    }
    double big = -std::copysign(std::cbrt(std::fabs(r) + std::sqrt(r * r - q3)), r);
    double small = (big == 0.0) ? 0.0 : q / big;
    double x1 = (big + small) - a / 3.0;
    double xr = -(big + small) / 2.0 - a / 3.0;
    // The remaining pair is xr +- i * (sqrt(3)/2)(big - small); it counts as
    // a real double root only when that imaginary part is below the
    // clustering tolerance (double roots surface with ~sqrt(eps) error).
    static const double half_sqrt3 = 0.8660254037844386467637232;
    double imag = half_sqrt3 * std::fabs(big - small);
    double scale = std::max({1.0, std::fabs(x1), std::fabs(xr)});
    if (imag > cluster_eps * scale)
        throw ComplexSpectrum("cubic has one real root and a complex pair");
    roots.push_back(x1);
    roots.push_back(xr);
    roots.push_back(xr);
}

} // namespace

Spectrum eigenvalues_float(const CharPoly& p, const TolerancePolicy& tol, double cluster_eps) {
    if (p.mode() != Mode::Float) throw ModeMismatch("float eigenvalue extraction needs a float polynomial");
    std::vector<double> roots;
    if (p.degree() == 2)
        solve_quadratic_float(p.coeff(1).flt(), p.coeff(0).flt(), tol, roots);
    else
        solve_cubic_float(p.coeff(2).flt(), p.coeff(1).flt(), p.coeff(0).flt(), cluster_eps, roots);

    std::sort(roots.begin(), roots.end());
    double maxabs = 0.0;
    for (double x : roots) maxabs = std::max(maxabs, std::fabs(x));
    double thr = cluster_eps * std::max(1.0, maxabs);

    std::vector<Spectrum::Entry> entries;
    for (size_t i = 0; i < roots.size();) {
        size_t j = i + 1;
        while (j < roots.size() && roots[j] - roots[j - 1] <= thr) ++j;
        double sum = 0.0;
        for (size_t k = i; k < j; ++k) sum += roots[k];
        entries.push_back({Scalar::floating(sum / static_cast<double>(j - i)), static_cast<int>(j - i)});
        i = j;
    }
    return Spectrum(p.degree(), std::move(entries));
}

std::string SpectralClass::label() const {
    switch (kind) {
    case ClassKind::Distinct2: return "Distinct2";
    case ClassKind::Double2: return "Double2(geo " + std::to_string(geo) + ")";
    case ClassKind::Distinct3: return "Distinct3";
    case ClassKind::SimplePlusDouble: return "SimplePlusDouble(geo " + std::to_string(geo) + ")";
    case ClassKind::Triple: return "Triple(geo " + std::to_string(geo) + ")";
    }
    return "unknown";
}

std::string SpectralClass::slug() const {
    switch (kind) {
    case ClassKind::Distinct2: return "distinct2";
    case ClassKind::Double2: return "double2-geo" + std::to_string(geo);
    case ClassKind::Distinct3: return "distinct3";
    case ClassKind::SimplePlusDouble: return "simple-double-geo" + std::to_string(geo);
    case ClassKind::Triple: return "triple-geo" + std::to_string(geo);
    }
    return "unknown";
}

std::vector<SpectralClass> all_spectral_classes() {
    return {
        {ClassKind::Distinct2, 1},        {ClassKind::Double2, 1},
        {ClassKind::Double2, 2},          {ClassKind::Distinct3, 1},
        {ClassKind::SimplePlusDouble, 1}, {ClassKind::SimplePlusDouble, 2},
        {ClassKind::Triple, 1},           {ClassKind::Triple, 2},
        {ClassKind::Triple, 3},
    };
}

SpectralClass classify(const SmallMatrix& a, const Spectrum& spec, const TolerancePolicy& tol,
                       ExtractionTrace* trace) {
    if (spec.dim() != a.dim())
        throw InconsistentSpectrum("spectrum dimension does not match the matrix");
    if (spec.mode() != a.mode()) throw ModeMismatch("spectrum mode does not match the matrix");
    auto note = [&](std::string line) {
        if (trace) trace->add(std::move(line));
    };
    // Products of shifts scale like the square of the entries, so the
    // float zero test for a product gets the squared scale.
    double scale = a.max_abs_entry();
    double eff_single = tol.effective(scale);
    double eff_product = tol.effective(scale * scale);

    if (a.dim() == 2) {
        if (spec.size() == 2) {
            note("two distinct eigenvalues: class Distinct2");
            return {ClassKind::Distinct2, 1};
        }
        SmallMatrix b = shift(a, spec.entry(0).value);
        bool z = is_zero_matrix(b, eff_single);
        note("tested B = A - (" + spec.entry(0).value.str() + ")*I for zero: " +
             (z ? "B = 0, eigenspace is the whole plane (geo 2)"
                : "B != 0, defective double eigenvalue (geo 1)"));
        return {ClassKind::Double2, z ? 2 : 1};
    }

    if (spec.size() == 3) {
        note("three distinct eigenvalues: class Distinct3");
        return {ClassKind::Distinct3, 1};
    }

    if (spec.size() == 2) {
        const auto& first = spec.entry(0);
        const auto& second = spec.entry(1);
        const auto& simple = first.multiplicity == 1 ? first : second;
        const auto& dble = first.multiplicity == 1 ? second : first;
        SmallMatrix b1 = shift(a, simple.value);
        SmallMatrix b2 = shift(a, dble.value);
        SmallMatrix prod = b2 * b1;
        bool z = is_zero_matrix(prod, eff_product);
        note("tested B2*B1 for zero (B1 shifts by the simple eigenvalue " + simple.value.str() +
             ", B2 by the double eigenvalue " + dble.value.str() + "): " +
             (z ? "zero, eigenspace of the double eigenvalue is 2-dimensional (geo 2)"
                : "nonzero, the double eigenvalue is defective (geo 1)"));
        return {ClassKind::SimplePlusDouble, z ? 2 : 1};
    }

    SmallMatrix b = shift(a, spec.entry(0).value);
    if (is_zero_matrix(b, eff_single)) {
        note("B = A - (" + spec.entry(0).value.str() + ")*I = 0: geo 3, every vector is an eigenvector");
        return {ClassKind::Triple, 3};
    }
    SmallMatrix bsq = b * b;
    bool z = is_zero_matrix(bsq, eff_product);
    note("B = A - (" + spec.entry(0).value.str() + ")*I != 0; tested B^2 for zero: " +
         (z ? "B^2 = 0, triple eigenvalue with 2-dimensional eigenspace (geo 2)"
            : "B^2 != 0, single Jordan chain (geo 1)"));
    return {ClassKind::Triple, z ? 2 : 1};
}

} // namespace cheigen
