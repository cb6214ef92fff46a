#include "cheigen/oracle.hpp"

#include <algorithm>

namespace cheigen::oracle {

namespace {

using Grid = std::vector<std::vector<Rational>>;

// Reduced row-echelon form in place; returns the rank.
int rref(Grid& g) {
    int rows = static_cast<int>(g.size());
    int cols = rows ? static_cast<int>(g[0].size()) : 0;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (!g[static_cast<size_t>(i)][static_cast<size_t>(c)].is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(g[static_cast<size_t>(r)], g[static_cast<size_t>(p)]);
        Rational pivot = g[static_cast<size_t>(r)][static_cast<size_t>(c)];
        for (int j = c; j < cols; ++j)
            g[static_cast<size_t>(r)][static_cast<size_t>(j)] =
                g[static_cast<size_t>(r)][static_cast<size_t>(j)] / pivot;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            Rational f = g[static_cast<size_t>(i)][static_cast<size_t>(c)];
            if (f.is_zero()) continue;
            for (int j = c; j < cols; ++j)
                g[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    g[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                    f * g[static_cast<size_t>(r)][static_cast<size_t>(j)];
        }
        ++r;
    }
    return r;
}

Grid rows_of(const std::vector<SmallVector>& vectors) {
    Grid g;
    int dim = -1;
    for (const auto& v : vectors) {
        if (v.mode() != Mode::Exact) throw ModeMismatch("the oracle is exact-only");
        if (dim < 0) dim = v.dim();
        if (v.dim() != dim) throw DimensionMismatch("vectors of mixed dimensions");
        std::vector<Rational> row;
        for (int i = 0; i < dim; ++i) row.push_back(v[i].rat());
        g.push_back(std::move(row));
    }
    return g;
}

} // namespace

NullSpaceBasis null_space(const SmallMatrix& m) {
    if (m.mode() != Mode::Exact) throw ModeMismatch("the null-space oracle is exact-only");
    int n = m.dim();
    Grid g(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[static_cast<size_t>(i)][static_cast<size_t>(j)] = m.at(i, j).rat();
    int rank = rref(g);

    std::vector<int> pivot_col(static_cast<size_t>(rank));
    std::vector<bool> is_pivot(static_cast<size_t>(n), false);
    for (int r = 0; r < rank; ++r) {
        int c = 0;
        while (g[static_cast<size_t>(r)][static_cast<size_t>(c)].is_zero()) ++c;
        pivot_col[static_cast<size_t>(r)] = c;
        is_pivot[static_cast<size_t>(c)] = true;
    }

    NullSpaceBasis basis;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[static_cast<size_t>(f)]) continue;
        SmallVector v(n, Mode::Exact);
        v[f] = Scalar::exact(1);
        for (int r = 0; r < rank; ++r)
            v[pivot_col[static_cast<size_t>(r)]] =
                Scalar::exact(-g[static_cast<size_t>(r)][static_cast<size_t>(f)]);
        basis.vectors.push_back(std::move(v));
    }
    return basis;
}

int rank(const std::vector<SmallVector>& vectors) {
    if (vectors.empty()) return 0;
    Grid g = rows_of(vectors);
    return rref(g);
}

bool spans_equal(const std::vector<SmallVector>& u, const std::vector<SmallVector>& v) {
    if (u.empty() && v.empty()) return true;
    int du = u.empty() ? v.front().dim() : u.front().dim();
    int dv = v.empty() ? du : v.front().dim();
    if (du != dv) throw DimensionMismatch("span comparison across different dimensions");
    std::vector<SmallVector> both = u;
    both.insert(both.end(), v.begin(), v.end());
    int ru = rank(u);
    int rv = rank(v);
    return ru == rv && rv == rank(both);
}

EigenStructure eigensolve_reference(const SmallMatrix& a, const Spectrum& spec) {
    if (a.mode() != Mode::Exact) throw ModeMismatch("the reference solver is exact-only");
    if (spec.dim() != a.dim() || spec.mode() != Mode::Exact)
        throw InconsistentSpectrum("spectrum does not match the matrix");

    EigenStructure es;
    es.matrix_dim = a.dim();
    es.mode = Mode::Exact;
    es.trace.add("structure computed by the null-space reference solver");

    int repeated_geo = 1;
    for (int i = 0; i < spec.size(); ++i) {
        const Scalar& lambda = spec.entry(i).value;
        int alg = spec.entry(i).multiplicity;
        SmallMatrix b = shift(a, lambda);
        NullSpaceBasis ns = null_space(b);
        int geo = ns.dimension();
        if (geo < 1 || geo > alg)
            throw InconsistentSpectrum("null space of A - (" + lambda.str() + ")*I has dimension " +
                                       std::to_string(geo) + ", outside [1, " + std::to_string(alg) +
                                       "]");
        if (alg > 1) repeated_geo = geo;
        es.trace.add("null space of A - (" + lambda.str() + ")*I has dimension " +
                     std::to_string(geo));

        EigenRecord rec{lambda, alg, geo, ns.vectors, {}};
        if (alg == geo) {
            for (const auto& v : ns.vectors) rec.chains.push_back({lambda, {v}});
        } else if (alg == 2) {
            // One chain of length 2: a generalized vector is any null
            // vector of B^2 outside the null space of B.
            NullSpaceBasis layer = null_space(b * b);
            for (const auto& w : layer.vectors) {
                SmallVector v = b * w;
                if (is_zero_vector(v, 0.0)) continue;
                rec.chains.push_back({lambda, {v, w}});
                break;
            }
            if (rec.chains.empty())
                throw InconsistentSpectrum("no generalized vector for the defective eigenvalue " +
                                           lambda.str());
        } else if (geo == 1) {
            // Full-length chain: seed with the first standard basis vector
            // that B^2 does not annihilate.
            SmallMatrix bsq = b * b;
            for (int k = 0; k < 3; ++k) {
                SmallVector v1 = SmallVector::unit(3, k, Mode::Exact);
                SmallVector top = bsq * v1;
                if (is_zero_vector(top, 0.0)) continue;
                rec.chains.push_back({lambda, {top, b * v1, v1}});
                break;
            }
            if (rec.chains.empty())
                throw InconsistentSpectrum("B^2 = 0 although the triple eigenvalue " + lambda.str() +
                                           " should have a full chain");
        } else {
            // Triple with a 2-dimensional eigenspace: one chain of length
            // 2 plus an independent eigenvector.
            for (int k = 0; k < 3; ++k) {
                SmallVector w = SmallVector::unit(3, k, Mode::Exact);
                SmallVector v = b * w;
                if (is_zero_vector(v, 0.0)) continue;
                rec.chains.push_back({lambda, {v, w}});
                break;
            }
            if (rec.chains.empty())
                throw InconsistentSpectrum("B = 0 although the triple eigenvalue " + lambda.str() +
                                           " should be defective");
            const SmallVector& cv = rec.chains.front().vectors.front();
            for (const auto& u : ns.vectors) {
                if (rank({cv, u}) != 2) continue;
                rec.chains.push_back({lambda, {u}});
                break;
            }
            if (rec.chains.size() != 2)
                throw InconsistentSpectrum("no eigenvector independent of the chain for " +
                                           lambda.str());
        }
        es.records.push_back(std::move(rec));
    }

    if (a.dim() == 2)
        es.cls = spec.size() == 2 ? SpectralClass{ClassKind::Distinct2, 1}
                                  : SpectralClass{ClassKind::Double2, repeated_geo};
    else if (spec.size() == 3)
        es.cls = {ClassKind::Distinct3, 1};
    else if (spec.size() == 2)
        es.cls = {ClassKind::SimplePlusDouble, repeated_geo};
    else
        es.cls = {ClassKind::Triple, repeated_geo};
    return es;
}

namespace {

void validate_spec(const JordanSpec& spec) {
    if (spec.dim != 2 && spec.dim != 3) throw DimensionMismatch("Jordan spec dimension must be 2 or 3");
    int sum = 0;
    for (const auto& blk : spec.blocks) {
        if (blk.eigenvalue.mode() != Mode::Exact)
            throw ModeMismatch("Jordan spec eigenvalues must be exact");
        if (blk.size < 1) throw ValidationError("Jordan block size must be positive");
        sum += blk.size;
    }
    if (sum != spec.dim)
        throw ValidationError("Jordan block sizes sum to " + std::to_string(sum) + ", expected " +
                              std::to_string(spec.dim));
}

Scalar cofactor(const SmallMatrix& p, int i, int j) {
    int r[2], c[2], ri = 0, ci = 0;
    for (int k = 0; k < 3; ++k) {
        if (k != i) r[ri++] = k;
        if (k != j) c[ci++] = k;
    }
    Scalar minor = p.at(r[0], c[0]) * p.at(r[1], c[1]) - p.at(r[0], c[1]) * p.at(r[1], c[0]);
    return ((i + j) % 2 == 0) ? minor : -minor;
}

SmallMatrix inverse_exact(const SmallMatrix& p, const Scalar& det) {
    int n = p.dim();
    SmallMatrix inv(n, Mode::Exact);
    if (n == 2) {
        inv.at(0, 0) = p.at(1, 1) / det;
        inv.at(0, 1) = -p.at(0, 1) / det;
        inv.at(1, 0) = -p.at(1, 0) / det;
        inv.at(1, 1) = p.at(0, 0) / det;
        return inv;
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) inv.at(j, i) = cofactor(p, i, j) / det;
    return inv;
}

} // namespace

Spectrum spectrum_of(const JordanSpec& spec) {
    validate_spec(spec);
    std::vector<Spectrum::Entry> entries;
    for (const auto& blk : spec.blocks) {
        bool merged = false;
        for (auto& e : entries)
            if (e.value == blk.eigenvalue) {
                e.multiplicity += blk.size;
                merged = true;
                break;
            }
        if (!merged) entries.push_back({blk.eigenvalue, blk.size});
    }
    return Spectrum(spec.dim, std::move(entries));
}

SpectralClass class_of(const JordanSpec& spec) {
    Spectrum s = spectrum_of(spec);
    int repeated_geo = 1;
    for (int i = 0; i < s.size(); ++i) {
        if (s.entry(i).multiplicity == 1) continue;
        int blocks = 0;
        for (const auto& blk : spec.blocks)
            if (blk.eigenvalue == s.entry(i).value) ++blocks;
        repeated_geo = blocks;
    }
    if (spec.dim == 2)
        return s.size() == 2 ? SpectralClass{ClassKind::Distinct2, 1}
                             : SpectralClass{ClassKind::Double2, repeated_geo};
    if (s.size() == 3) return {ClassKind::Distinct3, 1};
    if (s.size() == 2) return {ClassKind::SimplePlusDouble, repeated_geo};
    return {ClassKind::Triple, repeated_geo};
}

SmallMatrix generate_matrix(const JordanSpec& spec, std::uint64_t seed) {
    validate_spec(spec);
    SmallMatrix j(spec.dim, Mode::Exact);
    int pos = 0;
    for (const auto& blk : spec.blocks) {
        for (int k = 0; k < blk.size; ++k) {
            j.at(pos + k, pos + k) = blk.eigenvalue;
            if (k + 1 < blk.size) j.at(pos + k, pos + k + 1) = Scalar::exact(1);
        }
        pos += blk.size;
    }

    std::mt19937_64 rng(seed);
    long long range = 9;
    for (int attempt = 1;; ++attempt) {
        SmallMatrix p(spec.dim, Mode::Exact);
        for (int r = 0; r < spec.dim; ++r)
            for (int c = 0; c < spec.dim; ++c) {
                auto span = static_cast<std::uint64_t>(2 * range + 1);
                p.at(r, c) = Scalar::exact(static_cast<long long>(rng() % span) - range);
            }
        Scalar det = p.det();
        if (det.is_zero()) {
            if (attempt % 64 == 0) range *= 2;
            continue;
        }
        return p * j * inverse_exact(p, det);
    }
}

JordanSpec random_spec_for(const SpectralClass& cls, std::mt19937_64& rng) {
    auto draw = [&rng]() -> Scalar {
        auto n = static_cast<long long>(rng() % 19) - 9;
        if (rng() % 4 == 0) return Scalar::exact(Rational(BigInt(2 * n + 1), BigInt(2)));
        return Scalar::exact(n);
    };
    auto draw_distinct = [&](int count) {
        std::vector<Scalar> vals;
        while (static_cast<int>(vals.size()) < count) {
            Scalar v = draw();
            bool dup = false;
            for (const auto& x : vals) dup = dup || x == v;
            if (!dup) vals.push_back(v);
        }
        return vals;
    };

    switch (cls.kind) {
    case ClassKind::Distinct2: {
        auto v = draw_distinct(2);
        return {2, {{v[0], 1}, {v[1], 1}}};
    }
    case ClassKind::Double2: {
        auto v = draw_distinct(1);
        if (cls.geo == 1) return {2, {{v[0], 2}}};
        return {2, {{v[0], 1}, {v[0], 1}}};
    }
    case ClassKind::Distinct3: {
        auto v = draw_distinct(3);
        return {3, {{v[0], 1}, {v[1], 1}, {v[2], 1}}};
    }
    case ClassKind::SimplePlusDouble: {
        auto v = draw_distinct(2);
        if (cls.geo == 1) return {3, {{v[0], 1}, {v[1], 2}}};
        return {3, {{v[0], 1}, {v[1], 1}, {v[1], 1}}};
    }
    case ClassKind::Triple: {
        auto v = draw_distinct(1);
        if (cls.geo == 1) return {3, {{v[0], 3}}};
        if (cls.geo == 2) return {3, {{v[0], 2}, {v[0], 1}}};
        return {3, {{v[0], 1}, {v[0], 1}, {v[0], 1}}};
    }
    }
    throw Error("unhandled spectral class");
}

} // namespace cheigen::oracle
