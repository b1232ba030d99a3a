#pragma once

#include <vector>

#include "affpr/prime_field.hpp"
#include "affpr/types.hpp"

namespace affpr {

/// Element (k, l) of the affine group Z_p x| Z_p*, acting on Z_p by m -> k + l m.
class AffineElement {
public:
    AffineElement(const PrimeModulus& p, long long k, long long l);

    int k() const { return k_; }
    int l() const { return l_; }
    const PrimeModulus& modulus() const { return p_; }

    /// Position in the canonical enumeration (l outer ascending, k inner ascending).
    int index() const { return (l_ - 1) * p_.value() + k_; }

    bool operator==(const AffineElement& other) const {
        return p_ == other.p_ && k_ == other.k_ && l_ == other.l_;
    }

private:
    PrimeModulus p_;
    int k_;
    int l_;
};

/// Tag naming the canonical enumeration order of G.
inline constexpr const char* kAffineOrderTag = "l-outer-k-inner";

AffineElement identity(const PrimeModulus& p);
/// (k,l)(k',l') = (k + l k', l l').
AffineElement multiply(const AffineElement& x, const AffineElement& y);
/// (k,l)^{-1} = (-l^{-1} k, l^{-1}).
AffineElement inverse(const AffineElement& x);
/// All p(p-1) elements in canonical order.
std::vector<AffineElement> enumerate(const PrimeModulus& p);
AffineElement element_at(const PrimeModulus& p, int index);

/// Image of m under the affine map m -> k + l m.
int act(const AffineElement& x, int m);

/// (pi(k,l) f)(m) = f(l^{-1}(m - k)) on {0..p-1}, as a permutation matrix.
ComplexMatrix pi_matrix(const AffineElement& x);
/// Pointwise evaluation of pi(x) f.
ComplexVector pi_apply(const AffineElement& x, const ComplexVector& f);

/// Fourier-side representation: (pi_hat(k,l) f)(m) = exp(-2 pi i k m / p) f(l m).
ComplexMatrix pi_hat_matrix(const AffineElement& x);
/// Restriction of pi_hat to the coordinates {1..p-1}.
ComplexMatrix pi_hat0_matrix(const AffineElement& x);
/// pi_hat0(x) phi for phi on {1..p-1}.
ComplexVector pi_hat0_apply(const AffineElement& x, const ComplexVector& phi);

// Conjugation actions on matrices indexed by {1..p-1} x {1..p-1}.

/// (rho1(k,l) A)(m,n) = exp(-2 pi i k (m-n) / p) A(lm, ln), i.e. pi_hat0 A pi_hat0^*.
ComplexMatrix rho1_apply(const AffineElement& x, const ComplexMatrix& a);

/// The entry permutation S block-diagonalising rho1:
///   (SA)(m,1) = A(-m,-m),  (SA)(m,n) = A(m(1-n)^{-1}, m n (1-n)^{-1}) for n >= 2.
ComplexMatrix s_apply(const ComplexMatrix& a);
///   (S*A)(m,m) = A(-m,1),  (S*A)(m,n) = A(m-n, m^{-1} n) for m != n.
ComplexMatrix s_inverse_apply(const ComplexMatrix& a);

/// (rho2(k,l) A)(m,1) = A(lm,1),  (rho2(k,l) A)(m,n) = exp(-2 pi i k m / p) A(lm,n) for n >= 2.
ComplexMatrix rho2_apply(const AffineElement& x, const ComplexMatrix& a);

/// (Omega0 f)(m) = f(-m) on {1..p-1}.
ComplexMatrix omega0(const PrimeModulus& p);
/// (Omega1 f)(n) = f(1 + n^{-1}), rows {1..p-2}, columns {2..p-1}.
ComplexMatrix omega1(const PrimeModulus& p);

/// S A split into its column n = 1 (a1) and the columns n >= 2 (a2prime).
struct SpectralDecomposition {
    ComplexVector a1;       // labels {1..p-1}
    ComplexMatrix a2prime;  // {1..p-1} x {2..p-1}
};

SpectralDecomposition split_spectral(const ComplexMatrix& sa);
ComplexMatrix join_spectral(const SpectralDecomposition& parts);

/// Prime p for a square matrix on {1..p-1}; throws on any other shape.
PrimeModulus modulus_of_square(const ComplexMatrix& a, const char* what);

}  // namespace affpr
