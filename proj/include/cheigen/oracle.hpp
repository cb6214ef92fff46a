#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cheigen/extract.hpp"

namespace cheigen::oracle {

/// Prescribed Jordan structure for a matrix to be generated: one entry per
/// Jordan block, block sizes summing to dim. Exact eigenvalues only.
struct JordanBlock {
    Scalar eigenvalue;
    int size;
};

struct JordanSpec {
    int dim;
    std::vector<JordanBlock> blocks;
};

/// Basis of the null space of an exact matrix, one vector per free column
/// of the reduced row-echelon form. Empty for a nonsingular matrix.
struct NullSpaceBasis {
    std::vector<SmallVector> vectors;

    int dimension() const { return static_cast<int>(vectors.size()); }
};

/// Exact Gaussian elimination to reduced row-echelon form; basis vectors
/// follow the standard free-column parameterization.
NullSpaceBasis null_space(const SmallMatrix& m);

/// Rank of the set of vectors (as rows), by exact elimination.
int rank(const std::vector<SmallVector>& vectors);

/// True iff rank(u) = rank(v) = rank(u stacked on v): the two sets span
/// the same subspace. Exact mode only.
bool spans_equal(const std::vector<SmallVector>& u, const std::vector<SmallVector>& v);

/// Classical reference solver: eigenspaces from null spaces, generalized
/// layers from null spaces of squared shifts, chains by mapping through the
/// shift. Independent of the column-extraction engine in every step.
EigenStructure eigensolve_reference(const SmallMatrix& a, const Spectrum& spec);

/// The spectrum a JordanSpec prescribes (algebraic multiplicity = summed
/// block sizes per eigenvalue).
Spectrum spectrum_of(const JordanSpec& spec);

/// The spectral class a JordanSpec prescribes (geometric multiplicity =
/// number of blocks per eigenvalue).
SpectralClass class_of(const JordanSpec& spec);

/// P * J * P^-1 for the prescribed Jordan matrix J and a seeded random
/// integer matrix P (entries in [-9, 9], widened if 64 draws stay
/// singular). Deterministic in (spec, seed); P^-1 is adjugate over
/// determinant, exactly.
SmallMatrix generate_matrix(const JordanSpec& spec, std::uint64_t seed);

/// A random JordanSpec whose generated matrices fall in the given class.
/// Eigenvalues are distinct, drawn from [-9, 9] with an occasional
/// denominator of 2.
JordanSpec random_spec_for(const SpectralClass& cls, std::mt19937_64& rng);

} // namespace cheigen::oracle
