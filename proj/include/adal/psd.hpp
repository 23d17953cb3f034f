#pragma once

#include "adal/sym_mat.hpp"

namespace adal {

/// w = pos + neg with pos psd, neg nsd and <pos, neg> = 0.
struct PsdSplit {
  SymMat pos;
  SymMat neg;
};

/// Spectral split of a symmetric matrix. Throws EigFailed.
PsdSplit psd_split(const SymMat& w);

namespace detail {

/// Same split on raw dense storage. Only the eigenpairs of the smaller side
/// are used to form one part; the other is w minus it, so pos + neg
/// reproduces w up to rounding. Both outputs are exactly symmetric.
void split_psd(const Matrix& w, Matrix& pos, Matrix& neg);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Matrix& w);

}  // namespace detail

}  // namespace adal
