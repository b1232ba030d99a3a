#pragma once

#include <string>

#include "affpr/types.hpp"

namespace affpr {

// Finite Heisenberg group over Z_n (n >= 2, not necessarily prime), central variable omitted.
// The Schroedinger representation acts on C^n by (pi(k,l) f)(y) = exp(2 pi i l y / n) f(y - k).

/// Complex table on Z_n x Z_n, entry (k,l) at row k, column l.
class HeisenbergTable {
public:
    explicit HeisenbergTable(int n);
    HeisenbergTable(int n, MatrixXc values);

    int n() const { return n_; }
    Complex& operator()(int k, int l) { return values_(k, l); }
    Complex operator()(int k, int l) const { return values_(k, l); }
    MatrixXc& values() { return values_; }
    const MatrixXc& values() const { return values_; }

    /// Entries in k-outer-l-inner order.
    VectorXc flatten() const;
    static HeisenbergTable unflatten(int n, const VectorXc& flat);

private:
    int n_;
    MatrixXc values_;
};

using AmbiguityTable = HeisenbergTable;

inline constexpr const char* kHeisenbergOrderTag = "k-outer-l-inner";
/// Nowhere-vanishing threshold: |A_phi(k,l)| > kAmbiguityTolerance * ||phi||^2.
inline constexpr double kAmbiguityTolerance = 1e-10;

/// Throws ValidationError unless n >= 2.
void require_heisenberg_size(int n);

ComplexMatrix schrodinger_matrix(int k, int l, int n);

/// Scalar by which conjugation with pi(k,l) multiplies pi(k2,l2):
/// exp(-2 pi i (l2 k - l k2) / n).
Complex conjugation_eigenvalue(int k, int l, int k2, int l2, int n);

/// A_phi(k,l) = n^{-1/2} <phi, pi(k,l) phi>.
AmbiguityTable ambiguity(const ComplexVector& phi);

struct HeisenbergReport {
    int n = 0;
    AmbiguityTable ambiguity{2};
    double min_modulus = 0.0;
    int zero_k = -1;  // location of the smallest |A_phi|, reported when not admissible
    int zero_l = -1;
    bool admissible = false;
};

HeisenbergReport heisenberg_report(const ComplexVector& phi);
bool check_generator_h(const ComplexVector& phi);

/// F(k,l) = <A pi(k,l) phi, pi(k,l) phi>.
HeisenbergTable h_forward(const ComplexMatrix& a, const ComplexVector& phi);
/// |<f, pi(k,l) phi>|^2.
HeisenbergTable h_intensity(const ComplexVector& f, const ComplexVector& phi);

/// A = sum_{k,l} n^{-2} F_hat(k,l) / <pi(k,l) phi, phi> pi(k,l), where
/// F_hat(k',l') = sum_{k,l} F(k,l) conjugation_eigenvalue(k,l,k',l').
/// Throws ValidationError naming the zero if the ambiguity function vanishes.
ComplexMatrix h_recover(const HeisenbergTable& f, const ComplexVector& phi);
ComplexVector h_recover_vector(const HeisenbergTable& f, const ComplexVector& phi);

/// Explicit n^2 x n^2 matrix of A -> F; column a n + b holds the image of E_ab.
MatrixXc h_full_map(const ComplexVector& phi);
int h_oracle_rank(const ComplexVector& phi);

}  // namespace affpr
