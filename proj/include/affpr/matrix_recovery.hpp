#pragma once

#include <string>
#include <vector>

#include "affpr/affine_group.hpp"
#include "affpr/group_fourier.hpp"
#include "affpr/prime_field.hpp"
#include "affpr/types.hpp"

namespace affpr {

// Matrix recovery for the frame pi_hat0(G) phi, phi on {1..p-1}.
//
// A generator phi is admissible when
//   (i)  c_phi(chi) = sum_l |phi(-l)|^2 chi(l) is nonzero for every character chi, and
//   (ii) B_phi(m,n) = phi(mn) conj(phi(m(n+1))) on {1..p-1} x {1..p-2} has rank p-2.
// Admissible generators recover every A on {1..p-1}^2 from
//   F(k,l) = <A pi_hat0(k,l) phi, pi_hat0(k,l) phi>.

/// Relative thresholds shared by the admissibility test and the rank oracle.
inline constexpr double kRankTolerance = 1e-10;
inline constexpr double kCharacterTolerance = 1e-10;
/// Recovered A must satisfy |lambda_2| <= kRankOneTolerance * |lambda_1| to count as rank one.
inline constexpr double kRankOneTolerance = 1e-6;

struct GeneratorReport {
    int p = 0;
    VectorXc cond_i_values;            // c_phi(chi_j), j = 0..p-2
    bool cond_i_holds = false;
    std::vector<int> failing_characters;
    ComplexMatrix b_phi;               // {1..p-1} x {1..p-2}
    int b_phi_rank = 0;
    bool cond_ii_holds = false;
    bool admissible = false;

    /// "admissible", "condition (i)", "condition (ii)" or "conditions (i) and (ii)".
    std::string reason() const;
};

VectorXc c_phi(const ComplexVector& phi, const CharacterTable& chars);
VectorXc c_phi(const ComplexVector& phi);
ComplexMatrix b_phi(const ComplexVector& phi);
GeneratorReport check_generator(const ComplexVector& phi);

/// phi = (1, 2) for p = 3 and phi = 1 - delta_1 for p > 3, on labels {1..p-1}.
ComplexVector canonical_generator(const PrimeModulus& p);
/// Time-domain counterpart on {0..p-1}:
///   psi(k) = exp(2 pi i k/3) + 2 exp(4 pi i k/3)          (p = 3)
///   psi(k) = delta_0(k) - 1/p - exp(2 pi i k/p) / p      (p >= 5)
ComplexVector canonical_time_generator(const PrimeModulus& p);
/// dft(psi) restricted to {1..p-1}: the Fourier-side generator matching psi.
ComplexVector fourier_side_generator(const ComplexVector& psi);

/// (f (x) g)(m,n) = f(m) conj(g(n)).
ComplexMatrix outer(const ComplexVector& f, const ComplexVector& g);

/// F(k,l) = <A pi_hat0(k,l) phi, pi_hat0(k,l) phi>.
GroupFunction forward_measure(const ComplexMatrix& a, const ComplexVector& phi);
/// |<f, pi_hat0(k,l) phi>|^2, i.e. forward_measure(f (x) f, phi).
GroupFunction intensity_measure(const ComplexVector& f, const ComplexVector& phi);
/// |<f, pi(k,l) psi>|^2 for f, psi on {0..p-1}.
GroupFunction time_intensity_measure(const ComplexVector& f, const ComplexVector& psi);

/// Precomputed inversion for one admissible generator.
class RecoveryPlan {
public:
    /// Throws ValidationError naming the failed condition(s) if phi is not admissible.
    explicit RecoveryPlan(const ComplexVector& phi);

    const PrimeModulus& modulus() const { return p_; }
    const GeneratorReport& report() const { return report_; }

    /// Column n = 1 of S A, from the character part of F.
    ComplexVector recover_a1(const GroupFunction& f) const;
    /// Columns n >= 2 of S A, from pi_hat0(F).
    ComplexMatrix recover_a2prime(const GroupFunction& f) const;
    ComplexMatrix recover(const GroupFunction& f) const;

private:
    PrimeModulus p_;
    CharacterTable chars_;
    GeneratorReport report_;
    MatrixXc right_factor_;  // p^{-1} Omega0^T (B^+)^* Omega1
};

ComplexMatrix recover_matrix(const GroupFunction& f, const ComplexVector& phi);

/// Top eigenvector of the Hermitian part of A, scaled so ||f||^2 = trace(A), with its
/// largest-modulus entry rotated onto the positive real axis. Throws NumericalError
/// ("measurements inconsistent") if A is not numerically rank one.
ComplexVector extract_rank_one(const ComplexMatrix& a, double rank_one_tol = kRankOneTolerance);
/// f up to global phase from F = |V_phi f|^2.
ComplexVector recover_vector(const GroupFunction& f, const ComplexVector& phi,
                             double rank_one_tol = kRankOneTolerance);

/// Rotates the first entry of (near-)maximal modulus onto the positive real axis.
VectorXc normalize_phase(const VectorXc& v);

// Independent oracle: the explicit p(p-1) x (p-1)^2 matrix of A -> F, built from
// rho1_apply on phi (x) phi. Column (a,b) has position (a-1)(p-1) + (b-1).

MatrixXc oracle_full_map(const ComplexVector& phi);
int oracle_rank(const ComplexVector& phi);
/// Least-squares inverse of the full map; throws ValidationError if it is rank deficient.
ComplexMatrix oracle_recover(const GroupFunction& f, const ComplexVector& phi);

/// Nonzero A with forward_measure(A, phi) = 0, constructed from the failing condition
/// (a vanishing c_phi entry, else a kernel vector of B_phi). Throws if phi is admissible.
ComplexMatrix kernel_witness(const ComplexVector& phi);

}  // namespace affpr
