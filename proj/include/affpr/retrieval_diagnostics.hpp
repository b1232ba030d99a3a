#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "affpr/affine_group.hpp"
#include "affpr/group_fourier.hpp"
#include "affpr/permutations.hpp"
#include "affpr/random.hpp"
#include "affpr/types.hpp"

namespace affpr {

/// Finite family of vectors on a common index set, spanning a space of dimension `dimension()`.
class FrameSystem {
public:
    /// The dimension defaults to the numerical rank of the whole family.
    FrameSystem(std::vector<ComplexVector> vectors, std::vector<std::string> labels = {});
    FrameSystem(std::vector<ComplexVector> vectors, std::vector<std::string> labels, int dimension);

    std::size_t size() const { return vectors_.size(); }
    int dimension() const { return dimension_; }
    const IndexSet& index() const { return vectors_.front().index(); }
    const std::vector<ComplexVector>& vectors() const { return vectors_; }
    const std::vector<std::string>& labels() const { return labels_; }
    /// Vectors as the columns of one matrix.
    MatrixXc synthesis() const;

private:
    std::vector<ComplexVector> vectors_;
    std::vector<std::string> labels_;
    int dimension_ = 0;
};

/// {pi(x) psi : x in G} for psi on Z_p, labelled "(k,l)".
FrameSystem affine_orbit(const ComplexVector& psi);
/// {Pi(h) psi : h in group}, labelled by one-line notation.
FrameSystem permutation_orbit(const std::vector<Permutation>& group, const ComplexVector& psi);

/// Exhaustive scans refuse families larger than this.
inline constexpr std::size_t kMaxExhaustiveVectors = 22;

struct ComplementReport {
    bool holds = false;
    bool exhaustive = false;
    std::uint64_t subsets_covered = 0;  // subsets S decided, counting S and its complement separately
    std::vector<int> witness;           // positions of S when both S and its complement fail to span
};

/// Every subset S: span(S) or span(complement of S) is the whole span of the family.
ComplementReport complement_property(const FrameSystem& fs);
/// Same test on `samples` uniformly random subsets.
ComplementReport complement_property_sampled(const FrameSystem& fs, std::uint64_t samples, Rng& rng);

/// Real vectors f != +-g with |<f, psi_i>| = |<g, psi_i>| for all i, built from a complement-property witness.
std::array<ComplexVector, 2> confusable_pair(const FrameSystem& fs, const std::vector<int>& witness);

/// Subset count guard for full_spark.
inline constexpr std::uint64_t kMaxSparkSubsets = 5'000'000;
/// Every dimension()-element subset spans.
bool full_spark(const FrameSystem& fs);

/// <f, Pi(h)(delta_k0 - delta_l0)> = f(h(k0)) - f(h(l0)) for each h; the group must be doubly transitive.
std::vector<Complex> difference_coefficients(const ComplexVector& f, int k0, int l0,
                                             const std::vector<Permutation>& group);
/// Pairwise moduli |f(i) - f(j)| collected from difference coefficients; every pair must be covered.
Eigen::MatrixXd pairwise_moduli(const std::vector<Complex>& coefficients, int k0, int l0,
                                const std::vector<Permutation>& group);
Eigen::MatrixXd pairwise_moduli(const ComplexVector& f);

/// Relative eigenvalue thresholds of the planar embedding.
inline constexpr double kEmbeddingTolerance = 1e-8;
/// Zero-sum g realising the distances, equal to f or conj(f) up to a unit scalar, canonicalised.
ComplexVector conjugate_phase_reconstruct(const Eigen::MatrixXd& moduli);
/// Rotate the largest-modulus entry onto the positive reals, then conjugate if the
/// second-largest-modulus entry has negative imaginary part.
VectorXc canonical_conjugate_representative(const VectorXc& v);
/// min(phase_distance(u, v), phase_distance(u, conj(v))).
double conjugate_phase_distance(const VectorXc& u, const VectorXc& v);

struct CounterexampleReport {
    double y_sum = 0.0;                     // |sum y_l|
    double z_sum = 0.0;                     // |sum z_l|
    double identity_modulus_residual = 0.0; // max | |y_l-y_k|^2 + a^2 - |z_l-z_k|^2 - b^2 |
    double identity_real_residual = 0.0;    // max | Re(a (y_l-y_k)) - Re(b (z_l-z_k)) |
    double coefficient_residual = 0.0;      // max over x in S(3) of | |<f1, Pi(x) psi1>| - |<g1, Pi(x) psi1>| |
    double distance_plain = 0.0;            // min_alpha ||f1 - alpha g1||
    double distance_conjugate = 0.0;        // min_alpha ||f1 - alpha conj(g1)||
    bool non_equivalent = false;
    double constant_scaling = 0.0;          // c with |<y, Pi(x) psi1>| = |<c 1, Pi(x) psi1>|
    double constant_residual = 0.0;
    double displayed_constant = 0.0;        // |1 - xi| / sqrt(3)
    double text_constant = 0.0;             // |1 - xi| / 3
    std::string matching_constant;          // "displayed", "text" or "neither"
    double constant_inner_product = 0.0;    // |<y, 1>|
    std::vector<std::string> failures;
    bool passed() const { return failures.empty(); }
};

CounterexampleReport verify_counterexample_n3();

struct PatchData {
    std::array<int, 3> support{};  // ascending
    ComplexVector local_vector;    // labels = support
};

/// Q_A f = f restricted to A minus its mean on A.
PatchData exact_patch(const ComplexVector& f, const std::array<int, 3>& support);
/// All 3-element subsets of {0..n-1} in lexicographic order.
std::vector<std::array<int, 3>> three_subsets(int n);

inline constexpr double kStitchTolerance = 1e-8;
/// g = alpha f from patches alpha_A Q_A f of a zero-sum f. `reference` picks the patch whose phase is kept
/// (falls back to the first nonzero patch when that one carries no data).
ComplexVector phase_propagation_stitch(const std::vector<PatchData>& patches, int n, std::size_t reference = 0);

/// |<f, Pi(h) psi>| for every h.
std::vector<double> permutation_moduli(const ComplexVector& f, const std::vector<Permutation>& group,
                                       const ComplexVector& psi);

enum class LocalSolver { kLinear, kGaussNewton };

struct ThreeTransitiveOptions {
    LocalSolver solver = LocalSolver::kLinear;
    std::uint64_t seed = kDefaultSeed;
    int starts = 8;
    double residual_tolerance = 1e-9;  // relative to the local measurement norm
};

/// Phase retrieval on H_0 from |<f, Pi(h) psi>|, psi the trivial extension of a zero-sum psi0 on {0,1,2}.
ComplexVector three_transitive_phase_retrieval(const std::vector<double>& moduli,
                                               const std::vector<Permutation>& group, const ComplexVector& psi0,
                                               const ThreeTransitiveOptions& options = {});

struct PauliReport {
    int p = 0;
    std::vector<bool> time_moduli_equal;     // |F_l| = |G_l|, l = 1..p-1
    std::vector<bool> fourier_moduli_equal;  // |dft F_l| = |dft G_l|
    double max_time_deviation = 0.0;
    double max_fourier_deviation = 0.0;
    bool all_equal() const;
};

inline constexpr double kPauliTolerance = 1e-10;
/// Compares F_l = V_psi f(., l) and G_l = V_psi g(., l), psi = canonical_time_generator(p).
PauliReport pauli_pair_family(const ComplexVector& f, const ComplexVector& g);

/// V_psi f(k,l) = <f, pi(k,l) psi> as a group function.
GroupFunction time_coefficients(const ComplexVector& f, const ComplexVector& psi);
/// P_l f: f with its l-th Fourier coefficient removed.
ComplexVector frequency_deletion(const ComplexVector& f, int l);
/// m(l) = |P_l f|, l = 1..p-1 (row l-1 of the result, column k).
Eigen::MatrixXd projection_moduli(const ComplexVector& f);
/// f in H_0 up to phase from the pointwise moduli of its frequency-deleted copies.
ComplexVector recover_from_projections(const Eigen::MatrixXd& moduli);
/// projection_moduli followed by recover_from_projections; f must lie in H_0.
ComplexVector projection_phase_retrieval(const ComplexVector& f);

}  // namespace affpr
