#include "cheigen/extract.hpp"

#include <array>
#include <cmath>

namespace cheigen {

namespace {

std::string unit_name(int index) { return "e" + std::to_string(index + 1); }

SpectralClass require_class(const SmallMatrix& a, const Spectrum& spec, const TolerancePolicy& tol,
                            ClassKind expected, const char* op) {
    SpectralClass cls = classify(a, spec, tol);
    if (cls.kind != expected)
        throw ClassMismatch(std::string(op) + " called on a matrix of class " + cls.label());
    return cls;
}

EigenStructure make_structure(const SmallMatrix& a, SpectralClass cls) {
    EigenStructure es;
    es.matrix_dim = a.dim();
    es.mode = a.mode();
    es.cls = cls;
    return es;
}

JordanChain singleton(const Scalar& lambda, SmallVector v) {
    return {lambda, {std::move(v)}};
}

// Largest 2x2 minor magnitude of the pair (u, w); zero iff dependent.
// witness (when given, starting at zero) receives the first nonzero minor.
double pair_minor_measure(const SmallVector& u, const SmallVector& w, Scalar* witness) {
    double best = 0.0;
    for (int i = 0; i < u.dim(); ++i)
        for (int j = i + 1; j < u.dim(); ++j) {
            Scalar m = u[i] * w[j] - u[j] * w[i];
            double mag = std::fabs(m.to_double());
            if (mag > best) best = mag;
            if (witness && witness->is_zero() && !m.is_zero()) *witness = m;
        }
    return best;
}

bool pair_independent(const SmallVector& u, const SmallVector& w, double eff) {
    for (int i = 0; i < u.dim(); ++i)
        for (int j = i + 1; j < u.dim(); ++j) {
            Scalar m = u[i] * w[j] - u[j] * w[i];
            if (!is_zero_scalar(m, eff)) return true;
        }
    return false;
}

} // namespace

EigenStructure extract_2x2_distinct(const SmallMatrix& a, const Spectrum& spec,
                                    const TolerancePolicy& tol) {
    SpectralClass cls = require_class(a, spec, tol, ClassKind::Distinct2, "extract_2x2_distinct");
    EigenStructure es = make_structure(a, cls);
    double eff = tol.effective(a);
    std::array<SmallMatrix, 2> b = {shift(a, spec.entry(0).value), shift(a, spec.entry(1).value)};
    for (int k = 0; k < 2; ++k)
        es.trace.add("B" + std::to_string(k + 1) + " = A - (" + spec.entry(k).value.str() +
                     ")*I = " + b[static_cast<size_t>(k)].str());
    // The factor identity B1*B2 = p(A) = 0 makes every nonzero column of
    // B_i an eigenvector for the other eigenvalue.
    for (int k = 0; k < 2; ++k) {
        int other = 1 - k;
        auto pick = chosen_column(b[static_cast<size_t>(other)], eff);
        if (!pick)
            throw ClassMismatch("B" + std::to_string(other + 1) +
                                " is zero although the eigenvalues are distinct");
        const Scalar& lambda = spec.entry(k).value;
        SmallVector v = normalize_eigenvector(pick->second);
        es.trace.add("picked column " + std::to_string(pick->first) + " of B" +
                     std::to_string(other + 1) + " -> eigenvector for lambda = " + lambda.str() +
                     ": " + v.str());
        es.records.push_back({lambda, 1, 1, {v}, {singleton(lambda, v)}});
    }
    return es;
}

EigenStructure extract_2x2_double(const SmallMatrix& a, const Spectrum& spec,
                                  const TolerancePolicy& tol) {
    SpectralClass cls = require_class(a, spec, tol, ClassKind::Double2, "extract_2x2_double");
    EigenStructure es = make_structure(a, cls);
    double eff = tol.effective(a);
    const Scalar& lambda = spec.entry(0).value;
    SmallMatrix b = shift(a, lambda);
    es.trace.add("B = A - (" + lambda.str() + ")*I = " + b.str());

    if (cls.geo == 2) {
        es.trace.add("B = 0: every nonzero vector is an eigenvector; basis {e1, e2}");
        SmallVector e1 = SmallVector::unit(2, 0, a.mode());
        SmallVector e2 = SmallVector::unit(2, 1, a.mode());
        es.records.push_back({lambda, 2, 2, {e1, e2}, {singleton(lambda, e1), singleton(lambda, e2)}});
        return es;
    }

    for (int i = 0; i < 2; ++i) {
        SmallVector w = SmallVector::unit(2, i, a.mode());
        SmallVector v = b * w;
        if (is_zero_vector(v, eff)) {
            es.trace.add("tried w = " + unit_name(i) + ": B*w = 0, skipped");
            continue;
        }
        es.trace.add("tried w = " + unit_name(i) + ": B*w = " + v.str() + " is nonzero");
        es.trace.add("chain: v = B*w = " + v.str() + ", w = " + w.str() +
                     "; A*w = " + lambda.str() + "*w + v");
        SmallVector nv = normalize_eigenvector(v);
        es.records.push_back({lambda, 2, 1, {nv}, {{lambda, {v, w}}}});
        return es;
    }
    throw ClassMismatch("B maps both standard basis vectors to zero although geo = 1");
}

EigenStructure extract_3x3_distinct(const SmallMatrix& a, const Spectrum& spec,
                                    const TolerancePolicy& tol) {
    SpectralClass cls = require_class(a, spec, tol, ClassKind::Distinct3, "extract_3x3_distinct");
    EigenStructure es = make_structure(a, cls);
    double scale = a.max_abs_entry();
    double eff2 = tol.effective(scale * scale);
    std::array<SmallMatrix, 3> b = {shift(a, spec.entry(0).value), shift(a, spec.entry(1).value),
                                    shift(a, spec.entry(2).value)};
    for (int k = 0; k < 3; ++k)
        es.trace.add("B" + std::to_string(k + 1) + " = A - (" + spec.entry(k).value.str() +
                     ")*I = " + b[static_cast<size_t>(k)].str());
    // p(A) = B1*B2*B3 = 0, so the product of two shifts annihilates under
    // the third: its nonzero columns are eigenvectors for the left-out
    // eigenvalue. Nonzero because a quadratic cannot annihilate A here.
    for (int k = 0; k < 3; ++k) {
        int i = (k == 0) ? 1 : 0;
        int j = (k == 2) ? 1 : 2;
        SmallMatrix prod = b[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
        std::string pname = "B" + std::to_string(i + 1) + "*B" + std::to_string(j + 1);
        es.trace.add(pname + " = " + prod.str());
        auto pick = chosen_column(prod, eff2);
        if (!pick)
            throw ClassMismatch(pname + " is zero although the three eigenvalues are distinct");
        const Scalar& lambda = spec.entry(k).value;
        SmallVector v = normalize_eigenvector(pick->second);
        es.trace.add("picked column " + std::to_string(pick->first) + " of " + pname +
                     " -> eigenvector for lambda = " + lambda.str() + ": " + v.str());
        es.records.push_back({lambda, 1, 1, {v}, {singleton(lambda, v)}});
    }
    return es;
}

EigenStructure extract_3x3_simple_double(const SmallMatrix& a, const Spectrum& spec,
                                         const TolerancePolicy& tol) {
    SpectralClass cls =
        require_class(a, spec, tol, ClassKind::SimplePlusDouble, "extract_3x3_simple_double");
    EigenStructure es = make_structure(a, cls);
    double scale = a.max_abs_entry();
    double eff = tol.effective(scale);
    double eff2 = tol.effective(scale * scale);

    const auto& first = spec.entry(0);
    const auto& second = spec.entry(1);
    const auto& simple = first.multiplicity == 1 ? first : second;
    const auto& dble = first.multiplicity == 1 ? second : first;
    SmallMatrix b1 = shift(a, simple.value);
    SmallMatrix b2 = shift(a, dble.value);
    es.trace.add("B1 = A - (" + simple.value.str() + ")*I (simple shift) = " + b1.str());
    es.trace.add("B2 = A - (" + dble.value.str() + ")*I (double shift) = " + b2.str());

    // Simple eigenvalue: B1*B2^2 = p(A) = 0, so columns of B2^2 lie in the
    // kernel of B1.
    SmallMatrix b2sq = b2 * b2;
    es.trace.add("B2^2 = " + b2sq.str());
    auto pick = chosen_column(b2sq, eff2);
    if (!pick) throw ClassMismatch("B2^2 is zero although the double eigenvalue has multiplicity 2");
    SmallVector vs = normalize_eigenvector(pick->second);
    es.trace.add("picked column " + std::to_string(pick->first) +
                 " of B2^2 -> eigenvector for lambda = " + simple.value.str() + ": " + vs.str());
    EigenRecord simple_rec{simple.value, 1, 1, {vs}, {singleton(simple.value, vs)}};

    EigenRecord double_rec{dble.value, 2, cls.geo, {}, {}};
    if (cls.geo == 2) {
        // B2*B1 = 0: all columns of B1 lie in the 2-dimensional eigenspace
        // of the double eigenvalue; pick the first independent pair.
        bool found = false;
        for (int i = 0; i < 3 && !found; ++i)
            for (int j = i + 1; j < 3 && !found; ++j) {
                SmallVector u = b1.col(i);
                SmallVector w = b1.col(j);
                if (is_zero_vector(u, eff) || is_zero_vector(w, eff)) continue;
                if (!pair_independent(u, w, eff2)) {
                    es.trace.add("columns " + std::to_string(i) + " and " + std::to_string(j) +
                                 " of B1 are proportional, trying the next pair");
                    continue;
                }
                Scalar witness = Scalar::zero(a.mode());
                pair_minor_measure(u, w, &witness);
                es.trace.add("columns " + std::to_string(i) + " and " + std::to_string(j) +
                             " of B1 are independent (2x2 minor " + witness.str() + " is nonzero)");
                SmallVector nu = normalize_eigenvector(u);
                SmallVector nw = normalize_eigenvector(w);
                es.trace.add("eigenspace basis for lambda = " + dble.value.str() + ": " + nu.str() +
                             ", " + nw.str());
                double_rec.basis = {nu, nw};
                double_rec.chains = {singleton(dble.value, nu), singleton(dble.value, nw)};
                found = true;
            }
        if (!found)
            throw ClassMismatch("no independent column pair in B1 although the eigenspace is 2-dimensional");
    } else {
        // Defective double eigenvalue: B2^2*B1 = 0 but B2*B1 != 0. A column
        // w of B1 with B2*w != 0 seeds the chain; v = B2*w is the eigenvector.
        bool found = false;
        for (int j = 0; j < 3 && !found; ++j) {
            SmallVector w = b1.col(j);
            SmallVector v = b2 * w;
            if (is_zero_vector(v, eff2)) {
                es.trace.add("tried column " + std::to_string(j) + " of B1: B2*w = 0, skipped");
                continue;
            }
            es.trace.add("tried column " + std::to_string(j) + " of B1: w = " + w.str() +
                         ", B2*w = " + v.str() + " is nonzero");
            es.trace.add("chain for lambda = " + dble.value.str() + ": v = B2*w = " + v.str() +
                         ", w = " + w.str());
            double_rec.basis = {normalize_eigenvector(v)};
            double_rec.chains = {{dble.value, {v, w}}};
            found = true;
        }
        if (!found)
            throw ClassMismatch("B2*B1 has no nonzero column although the double eigenvalue is defective");
    }

    if (simple.value < dble.value) {
        es.records.push_back(std::move(simple_rec));
        es.records.push_back(std::move(double_rec));
    } else {
        es.records.push_back(std::move(double_rec));
        es.records.push_back(std::move(simple_rec));
    }
    return es;
}

ColumnCaseProfile column_case_profile(const SmallMatrix& b, const TolerancePolicy& tol) {
    if (b.dim() != 3) throw DimensionMismatch("column case analysis applies to 3x3 matrices");
    double eff = b.mode() == Mode::Float ? tol.effective(b.max_abs_entry()) : 0.0;
    auto first = first_nonzero_column(b, eff);
    if (!first) throw ZeroMatrixError("column case analysis needs a nonzero matrix");
    int c = first->first;
    const SmallVector& v = first->second;

    // Ratio of a later column to the pivot column, taken at the pivot's
    // first nonzero entry and then verified across the whole column.
    auto column_ratio = [&](int col_index) -> Scalar {
        SmallVector target = b.col(col_index);
        int k = 0;
        while (is_zero_scalar(v[k], eff)) ++k;
        Scalar t = target[k] / v[k];
        SmallVector diff = target - t * v;
        double scale = std::max(1.0, std::fabs(t.to_double()));
        if (!is_zero_vector(diff, eff * scale))
            throw NotNilpotent("column " + std::to_string(col_index) +
                               " is not proportional to the pivot column: B^2 != 0");
        return t;
    };

    if (c == 0) {
        Scalar t = column_ratio(1);
        Scalar s = column_ratio(2);
        Scalar cond = v[0] + t * v[1] + s * v[2];
        double cond_eff =
            eff * std::max({1.0, std::fabs(t.to_double()), std::fabs(s.to_double())});
        if (!is_zero_scalar(cond, cond_eff))
            throw NotNilpotent("consistency condition x + t*y + s*z = " + cond.str() +
                               " is nonzero: B^2 != 0");
        return {1, v, t, s, cond};
    }
    if (c == 1) {
        Scalar t = column_ratio(2);
        Scalar cond = v[1] + t * v[2];
        double cond_eff = eff * std::max(1.0, std::fabs(t.to_double()));
        if (!is_zero_scalar(cond, cond_eff))
            throw NotNilpotent("consistency condition y + t*z = " + cond.str() +
                               " is nonzero: B^2 != 0");
        return {2, v, t, std::nullopt, cond};
    }
    Scalar cond = v[2];
    if (!is_zero_scalar(cond, eff))
        throw NotNilpotent("third entry z = " + cond.str() +
                           " of the only nonzero column is nonzero: B^2 != 0");
    return {3, v, std::nullopt, std::nullopt, cond};
}

std::vector<SmallVector> ColumnCaseProfile::eigenbasis() const {
    Mode m = pivot_column.mode();
    if (case_id == 1) {
        SmallVector u(3, m), w(3, m);
        u[0] = -*t;
        u[1] = Scalar::one(m);
        w[0] = -*s;
        w[2] = Scalar::one(m);
        return {u, w};
    }
    if (case_id == 2) {
        SmallVector u(3, m);
        u[1] = -*t;
        u[2] = Scalar::one(m);
        return {u, SmallVector::unit(3, 0, m)};
    }
    return {SmallVector::unit(3, 0, m), SmallVector::unit(3, 1, m)};
}

EigenStructure extract_3x3_triple(const SmallMatrix& a, const Spectrum& spec,
                                  const TolerancePolicy& tol) {
    SpectralClass cls = require_class(a, spec, tol, ClassKind::Triple, "extract_3x3_triple");
    EigenStructure es = make_structure(a, cls);
    double scale = a.max_abs_entry();
    double eff2 = tol.effective(scale * scale);
    const Scalar& lambda = spec.entry(0).value;
    SmallMatrix b = shift(a, lambda);
    es.trace.add("B = A - (" + lambda.str() + ")*I = " + b.str());

    if (cls.geo == 3) {
        es.trace.add("B = 0: every nonzero vector is an eigenvector; basis {e1, e2, e3}");
        EigenRecord rec{lambda, 3, 3, {}, {}};
        for (int i = 0; i < 3; ++i) {
            SmallVector e = SmallVector::unit(3, i, a.mode());
            rec.basis.push_back(e);
            rec.chains.push_back(singleton(lambda, e));
        }
        es.records.push_back(std::move(rec));
        return es;
    }

    if (cls.geo == 1) {
        SmallMatrix bsq = b * b;
        es.trace.add("B^2 = " + bsq.str());
        auto pick = chosen_column(bsq, eff2);
        if (!pick) throw ClassMismatch("B^2 is zero although geo = 1");
        SmallVector vb = normalize_eigenvector(pick->second);
        es.trace.add("picked column " + std::to_string(pick->first) +
                     " of B^2 -> eigenvector for lambda = " + lambda.str() + ": " + vb.str());
        for (int i = 0; i < 3; ++i) {
            SmallVector v1 = SmallVector::unit(3, i, a.mode());
            SmallVector top = bsq * v1;
            if (is_zero_vector(top, eff2)) {
                es.trace.add("tried v1 = " + unit_name(i) + ": B^2*v1 = 0, skipped");
                continue;
            }
            SmallVector mid = b * v1;
            es.trace.add("tried v1 = " + unit_name(i) + ": B^2*v1 = " + top.str() + " is nonzero");
            es.trace.add("chain: [B^2*v1, B*v1, v1] = [" + top.str() + ", " + mid.str() + ", " +
                         v1.str() + "]");
            es.records.push_back({lambda, 3, 1, {vb}, {{lambda, {top, mid, v1}}}});
            return es;
        }
        throw ClassMismatch("B^2 annihilates the standard basis although geo = 1");
    }

    // geo 2: B != 0 and B^2 = 0; the column zero-pattern of B determines
    // both eigenvectors and the chain.
    if (a.mode() == Mode::Float)
        es.trace.add("note: the column zero-pattern dispatch below is tolerance-sensitive in float mode");
    ColumnCaseProfile profile = column_case_profile(b, tol);
    es.trace.add("first nonzero column of B is column " + std::to_string(profile.case_id - 1) +
                 ": v = " + profile.pivot_column.str());
    if (profile.case_id == 1)
        es.trace.add("case 1: B = (v | t*v | s*v) with t = " + profile.t->str() +
                     ", s = " + profile.s->str() + "; condition x + t*y + s*z = 0 holds");
    else if (profile.case_id == 2)
        es.trace.add("case 2: column 0 of B is zero and B = (0 | v | t*v) with t = " +
                     profile.t->str() + "; condition y + t*z = 0 holds");
    else
        es.trace.add("case 3: only column 2 of B is nonzero and its third entry is zero");

    std::vector<SmallVector> basis = profile.eigenbasis();
    es.trace.add("eigenspace basis: " + basis[0].str() + ", " + basis[1].str());

    SmallVector chain_v = profile.pivot_column;
    if (profile.case_id == 3) chain_v[2] = Scalar::zero(a.mode());
    int gidx = profile.generalized_unit_index();
    SmallVector gen = SmallVector::unit(3, gidx, a.mode());
    es.trace.add("chain: v = " + chain_v.str() + " with generalized vector " + unit_name(gidx));

    // Second chain is a singleton: the basis vector independent of the
    // chain's eigenvector (at most one of the two can be parallel to it).
    size_t pick_u;
    if (a.mode() == Mode::Exact) {
        pick_u = pair_independent(chain_v, basis[0], 0.0) ? 0 : 1;
    } else {
        pick_u = pair_minor_measure(chain_v, basis[0], nullptr) >=
                         pair_minor_measure(chain_v, basis[1], nullptr)
                     ? 0
                     : 1;
    }
    SmallVector u = normalize_eigenvector(basis[pick_u]);
    es.trace.add("second chain is the independent eigenvector " + u.str());

    EigenRecord rec{lambda, 3, 2, basis, {{lambda, {chain_v, gen}}, singleton(lambda, u)}};
    es.profile = std::move(profile);
    es.records.push_back(std::move(rec));
    return es;
}

EigenStructure analyze(const SmallMatrix& a, const TolerancePolicy& tol, double cluster_eps) {
    ExtractionTrace pipeline;
    CharPoly p = char_poly(a);
    pipeline.add("characteristic polynomial: " + p.str());
    Spectrum spec =
        a.mode() == Mode::Exact ? eigenvalues_exact(p) : eigenvalues_float(p, tol, cluster_eps);
    std::string line = "eigenvalues:";
    for (int i = 0; i < spec.size(); ++i) {
        line += (i ? ", " : " ") + spec.entry(i).value.str() + " (multiplicity " +
                std::to_string(spec.entry(i).multiplicity) + ")";
    }
    pipeline.add(std::move(line));
    SpectralClass cls = classify(a, spec, tol, &pipeline);
    pipeline.add("class: " + cls.label());

    EigenStructure es = [&] {
        switch (cls.kind) {
        case ClassKind::Distinct2: return extract_2x2_distinct(a, spec, tol);
        case ClassKind::Double2: return extract_2x2_double(a, spec, tol);
        case ClassKind::Distinct3: return extract_3x3_distinct(a, spec, tol);
        case ClassKind::SimplePlusDouble: return extract_3x3_simple_double(a, spec, tol);
        case ClassKind::Triple: return extract_3x3_triple(a, spec, tol);
        }
        throw Error("unhandled spectral class");
    }();
    for (const auto& l : es.trace.lines()) pipeline.add(l);
    es.trace = std::move(pipeline);
    return es;
}

VerificationReport verify_structure(const SmallMatrix& a, const EigenStructure& es,
                                    const TolerancePolicy& tol) {
    VerificationReport rep;
    bool exact = a.mode() == Mode::Exact;
    double scale = a.max_abs_entry();
    auto threshold = [&](double vec_scale) {
        return exact ? 0.0 : tol.effective(scale * std::max(1.0, vec_scale));
    };

    for (const auto& rec : es.records) {
        SmallMatrix b = shift(a, rec.eigenvalue);
        std::string tag = " lambda=" + rec.eigenvalue.str();

        for (size_t i = 0; i < rec.basis.size(); ++i) {
            SmallVector r = b * rec.basis[i];
            double res = r.max_abs_entry();
            bool ok = res <= threshold(rec.basis[i].max_abs_entry());
            rep.checks.push_back({"eigen-residual" + tag + " basis[" + std::to_string(i) + "]", ok, res});
        }

        for (size_t c = 0; c < rec.chains.size(); ++c) {
            const auto& ch = rec.chains[c];
            for (size_t k = 0; k < ch.vectors.size(); ++k) {
                SmallVector r = b * ch.vectors[k];
                if (k > 0) r = r - ch.vectors[k - 1];
                double res = r.max_abs_entry();
                bool ok = res <= threshold(ch.vectors[k].max_abs_entry());
                rep.checks.push_back({"chain" + tag + " chain[" + std::to_string(c) + "] link[" +
                                          std::to_string(k) + "]",
                                      ok, res});
            }
        }

        // Independence: 1 vector -> nonzero; 2 -> some 2x2 minor nonzero;
        // 3 -> nonzero determinant. Constant-time, no elimination.
        bool ok = false;
        if (rec.basis.size() == 1) {
            ok = !is_zero_vector(rec.basis[0], exact ? 0.0 : tol.effective(1.0));
        } else if (rec.basis.size() == 2) {
            ok = pair_independent(rec.basis[0], rec.basis[1], exact ? 0.0 : tol.effective(1.0));
        } else if (rec.basis.size() == 3) {
            SmallMatrix m(3, a.mode());
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) m.at(i, j) = rec.basis[static_cast<size_t>(j)][i];
            ok = !is_zero_scalar(m.det(), exact ? 0.0 : tol.effective(1.0));
        }
        rep.checks.push_back({"independence" + tag, ok, 0.0});
    }
    return rep;
}

} // namespace cheigen
