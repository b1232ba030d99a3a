#pragma once

#include "affpr/types.hpp"

namespace affpr {

// Unitary DFT on the cyclic group of order n = f.size(), with the normalisation
//   dft(f)(m) = n^{-1/2} sum_k f(k) exp(-2 pi i k m / n).
// Inputs must be indexed by {0..n-1}. Transforms are direct O(n^2) sums.

/// exp(-2 pi i t / n), with t reduced mod n before evaluation.
Complex unit_root(long long t, int n);

ComplexVector dft(const ComplexVector& f);
ComplexVector idft(const ComplexVector& f_hat);
VectorXc dft(const VectorXc& f);
VectorXc idft(const VectorXc& f_hat);

/// (f * g)(m) = sum_k f(k) g(m - k). Satisfies dft(f*g) = sqrt(n) dft(f) dft(g).
ComplexVector convolve(const ComplexVector& f, const ComplexVector& g);

/// The n x n unitary DFT matrix U with U(m,k) = n^{-1/2} exp(-2 pi i k m / n).
MatrixXc dft_matrix(int n);

/// delta_k on {0..n-1}.
ComplexVector delta(int n, int k);
/// The constant vector 1 on {0..n-1}.
ComplexVector ones(int n);

}  // namespace affpr
