#pragma once

#include "affpr/affine_group.hpp"
#include "affpr/prime_field.hpp"
#include "affpr/types.hpp"

namespace affpr {

/// Complex function on G = Z_p x| Z_p*, stored in the canonical order
/// (l outer ascending, k inner ascending).
class GroupFunction {
public:
    explicit GroupFunction(const PrimeModulus& p);
    GroupFunction(const PrimeModulus& p, VectorXc values);

    const PrimeModulus& modulus() const { return p_; }
    Eigen::Index size() const { return values_.size(); }

    Complex& operator()(int k, int l) { return values_(index(k, l)); }
    Complex operator()(int k, int l) const { return values_(index(k, l)); }
    Complex& operator[](const AffineElement& x) { return values_(x.index()); }
    Complex operator[](const AffineElement& x) const { return values_(x.index()); }

    VectorXc& values() { return values_; }
    const VectorXc& values() const { return values_; }

private:
    Eigen::Index index(int k, int l) const { return static_cast<Eigen::Index>(l - 1) * p_.value() + k; }

    PrimeModulus p_;
    VectorXc values_;
};

/// (chi_tilde_j(F))_j together with pi_hat0(F). Unnormalised group Fourier transform.
struct AffineFourierCoefficients {
    VectorXc scalar_part;        // indexed by character index j in {0..p-2}
    ComplexMatrix matrix_part;   // {1..p-1} x {1..p-1}
};

/// chi_tilde_j(F) = sum_l (sum_k F(k,l)) chi_j(l).
Complex chi_tilde(const GroupFunction& f, const CharacterTable& chars, int j);
Complex chi_tilde(const GroupFunction& f, int j);

/// pi_hat0(F) = sum_{k,l} F(k,l) pi_hat0(k,l).
ComplexMatrix pi_hat0_transform(const GroupFunction& f);

AffineFourierCoefficients fourier_transform(const GroupFunction& f);

/// F(k,l) = |G|^{-1} [ sum_j c_j conj(chi_j(l)) + (p-1) trace(M pi_hat0(k,l)^*) ].
GroupFunction fourier_invert(const AffineFourierCoefficients& c, const PrimeModulus& p);

/// |G|^{-1} (sum_j |c_j|^2 + (p-1) ||M||_F^2); equals ||F||^2 by Plancherel.
double plancherel_norm_squared(const AffineFourierCoefficients& c, const PrimeModulus& p);

/// Left translate (x.F)(y) = F(x^{-1} y).
GroupFunction left_translate(const GroupFunction& f, const AffineElement& x);

}  // namespace affpr
