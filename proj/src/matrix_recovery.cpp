#include "affpr/matrix_recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "affpr/errors.hpp"
#include "affpr/harmonics.hpp"

namespace affpr {

namespace {

PrimeModulus modulus_of_generator(const ComplexVector& phi, const char* what) {
    const int p = static_cast<int>(phi.size()) + 1;
    if (p < 3 || !is_prime(p)) throw ValidationError(std::string(what) + ": generator must be indexed by {1..p-1}");
    require_index(phi, IndexSet::range(1, p - 1), what);
    return PrimeModulus(p);
}

}  // namespace

std::string GeneratorReport::reason() const {
    if (admissible) return "admissible";
    if (!cond_i_holds && !cond_ii_holds) return "conditions (i) and (ii)";
    return cond_i_holds ? "condition (ii)" : "condition (i)";
}

VectorXc c_phi(const ComplexVector& phi, const CharacterTable& chars) {
    const auto& p = chars.modulus();
    require_index(phi, IndexSet::range(1, p.value() - 1), "c_phi");
    VectorXc out(chars.count());
    for (int j = 0; j < chars.count(); ++j) {
        Complex acc = 0.0;
        for (int l = 1; l < p.value(); ++l) acc += std::norm(phi(p.reduce(-l))) * chars(j, l);
        out(j) = acc;
    }
    return out;
}

VectorXc c_phi(const ComplexVector& phi) {
    return c_phi(phi, CharacterTable(modulus_of_generator(phi, "c_phi")));
}

ComplexMatrix b_phi(const ComplexVector& phi) {
    const auto p = modulus_of_generator(phi, "b_phi");
    ComplexMatrix out(IndexSet::range(1, p.value() - 1), IndexSet::range(1, p.value() - 2));
    for (int m = 1; m < p.value(); ++m)
        for (int n = 1; n <= p.value() - 2; ++n)
            out(m, n) = phi(p.reduce(static_cast<long long>(m) * n)) *
                        std::conj(phi(p.reduce(static_cast<long long>(m) * (n + 1))));
    return out;
}

GeneratorReport check_generator(const ComplexVector& phi) {
    const auto p = modulus_of_generator(phi, "check_generator");
    const CharacterTable chars(p);
    GeneratorReport r;
    r.p = p.value();
    r.cond_i_values = c_phi(phi, chars);
    const double scale = phi.values().squaredNorm();
    for (int j = 0; j < chars.count(); ++j)
        if (!(std::abs(r.cond_i_values(j)) > kCharacterTolerance * scale)) r.failing_characters.push_back(j);
    r.cond_i_holds = r.failing_characters.empty();
    r.b_phi = b_phi(phi);
    r.b_phi_rank = numerical_rank(r.b_phi.values(), kRankTolerance);
    r.cond_ii_holds = r.b_phi_rank == p.value() - 2;
    r.admissible = r.cond_i_holds && r.cond_ii_holds;
    return r;
}

ComplexVector canonical_generator(const PrimeModulus& p) {
    ComplexVector phi(IndexSet::range(1, p.value() - 1));
    if (p.value() == 3) {
        phi(1) = 1.0;
        phi(2) = 2.0;
    } else {
        for (int m = 2; m < p.value(); ++m) phi(m) = 1.0;
    }
    return phi;
}

ComplexVector canonical_time_generator(const PrimeModulus& p) {
    ComplexVector psi(IndexSet::range(0, p.value() - 1));
    const double inv_p = 1.0 / p.value();
    for (int k = 0; k < p.value(); ++k) {
        if (p.value() == 3) {
            psi(k) = unit_root(-k, 3) + 2.0 * unit_root(-2 * k, 3);
        } else {
            psi(k) = (k == 0 ? 1.0 : 0.0) - inv_p - inv_p * unit_root(-k, p);
        }
    }
    return psi;
}

ComplexVector fourier_side_generator(const ComplexVector& psi) {
    const auto transformed = dft(psi);
    const int p = static_cast<int>(psi.size());
    return {IndexSet::range(1, p - 1), transformed.values().tail(p - 1)};
}

ComplexMatrix outer(const ComplexVector& f, const ComplexVector& g) {
    return {f.index(), g.index(), f.values() * g.values().adjoint()};
}

GroupFunction forward_measure(const ComplexMatrix& a, const ComplexVector& phi) {
    const auto p = modulus_of_generator(phi, "forward_measure");
    const auto idx = IndexSet::range(1, p.value() - 1);
    require_index(a, idx, idx, "forward_measure");
    GroupFunction out(p);
    for (const auto& x : enumerate(p)) {
        const VectorXc v = pi_hat0_apply(x, phi).values();
        out[x] = v.dot(a.values() * v);  // v^* A v = <A v, v>
    }
    return out;
}

GroupFunction intensity_measure(const ComplexVector& f, const ComplexVector& phi) {
    const auto p = modulus_of_generator(phi, "intensity_measure");
    require_index(f, phi.index(), "intensity_measure");
    GroupFunction out(p);
    for (const auto& x : enumerate(p)) out[x] = std::norm(pi_hat0_apply(x, phi).values().dot(f.values()));
    return out;
}

GroupFunction time_intensity_measure(const ComplexVector& f, const ComplexVector& psi) {
    const PrimeModulus p(static_cast<int>(psi.size()));
    require_index(psi, IndexSet::range(0, p.value() - 1), "time_intensity_measure");
    require_index(f, psi.index(), "time_intensity_measure");
    GroupFunction out(p);
    for (const auto& x : enumerate(p)) out[x] = std::norm(pi_apply(x, psi).values().dot(f.values()));
    return out;
}

RecoveryPlan::RecoveryPlan(const ComplexVector& phi)
    : p_(modulus_of_generator(phi, "RecoveryPlan")), chars_(p_), report_(check_generator(phi)) {
    if (!report_.admissible)
        throw ValidationError("generator fails " + report_.reason());
    const MatrixXc b_pinv = pseudo_inverse(report_.b_phi.values(), kRankTolerance);
    right_factor_ = omega0(p_).values().transpose() * b_pinv.adjoint() * omega1(p_).values() /
                    static_cast<double>(p_.value());
}

ComplexVector RecoveryPlan::recover_a1(const GroupFunction& f) const {
    if (!(f.modulus() == p_)) throw ValidationError("recover: measurement size does not match generator");
    const int p = p_.value();
    VectorXc coeff(chars_.count());
    for (int j = 0; j < chars_.count(); ++j) coeff(j) = chi_tilde(f, chars_, j) / report_.cond_i_values(j);
    ComplexVector a1(IndexSet::range(1, p - 1));
    const double scale = 1.0 / (static_cast<double>(p) * (p - 1));
    for (int k = 1; k < p; ++k) {
        Complex acc = 0.0;
        for (int j = 0; j < chars_.count(); ++j) acc += coeff(j) * chars_(j, k);
        a1(k) = scale * acc;
    }
    return a1;
}

ComplexMatrix RecoveryPlan::recover_a2prime(const GroupFunction& f) const {
    if (!(f.modulus() == p_)) throw ValidationError("recover: measurement size does not match generator");
    const int p = p_.value();
    return {IndexSet::range(1, p - 1), IndexSet::range(2, p - 1), pi_hat0_transform(f).values() * right_factor_};
}

ComplexMatrix RecoveryPlan::recover(const GroupFunction& f) const {
    return s_inverse_apply(join_spectral({recover_a1(f), recover_a2prime(f)}));
}

ComplexMatrix recover_matrix(const GroupFunction& f, const ComplexVector& phi) {
    return RecoveryPlan(phi).recover(f);
}

VectorXc normalize_phase(const VectorXc& v) {
    if (v.size() == 0) return v;
    const double max_mod = v.cwiseAbs().maxCoeff();
    if (max_mod == 0.0) return v;
    Eigen::Index pivot = 0;
    while (std::abs(v(pivot)) < (1.0 - 1e-9) * max_mod) ++pivot;
    const Complex phase = std::conj(v(pivot)) / std::abs(v(pivot));
    return v * phase;
}

ComplexVector extract_rank_one(const ComplexMatrix& a, double rank_one_tol) {
    const MatrixXc h = 0.5 * (a.values() + a.values().adjoint());
    if (h.norm() == 0.0) return ComplexVector(a.rows());
    Eigen::SelfAdjointEigenSolver<MatrixXc> eig(h);
    const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
    const Eigen::Index top = lambda.size() - 1;
    if (!(lambda(top) > 0.0)) throw NumericalError("measurements inconsistent: no positive eigenvalue");
    double second = 0.0;
    for (Eigen::Index i = 0; i < top; ++i) second = std::max(second, std::abs(lambda(i)));
    if (second > rank_one_tol * lambda(top))
        throw NumericalError("measurements inconsistent: recovered matrix is not rank one (ratio " +
                             std::to_string(second / lambda(top)) + ")");
    const double trace = h.trace().real();
    if (!(trace > 0.0)) throw NumericalError("measurements inconsistent: nonpositive trace");
    const VectorXc v = std::sqrt(trace) * eig.eigenvectors().col(top);
    return {a.rows(), normalize_phase(v)};
}

ComplexVector recover_vector(const GroupFunction& f, const ComplexVector& phi, double rank_one_tol) {
    return extract_rank_one(recover_matrix(f, phi), rank_one_tol);
}

MatrixXc oracle_full_map(const ComplexVector& phi) {
    const auto p = modulus_of_generator(phi, "oracle_full_map");
    const int d = p.value() - 1;
    const ComplexMatrix base = outer(phi, phi);
    MatrixXc map(static_cast<Eigen::Index>(p.value()) * d, d * d);
    for (const auto& x : enumerate(p)) {
        const ComplexMatrix moved = rho1_apply(x, base);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) map(x.index(), a * d + b) = std::conj(moved.values()(a, b));
    }
    return map;
}

int oracle_rank(const ComplexVector& phi) { return numerical_rank(oracle_full_map(phi), kRankTolerance); }

ComplexMatrix oracle_recover(const GroupFunction& f, const ComplexVector& phi) {
    const auto p = modulus_of_generator(phi, "oracle_recover");
    if (!(f.modulus() == p)) throw ValidationError("oracle_recover: measurement size does not match generator");
    const int d = p.value() - 1;
    const MatrixXc map = oracle_full_map(phi);
    Eigen::CompleteOrthogonalDecomposition<MatrixXc> cod(map);
    cod.setThreshold(kRankTolerance);
    if (cod.rank() != d * d) throw ValidationError("oracle_recover: measurement map is rank deficient");
    const VectorXc vec = cod.solve(f.values());
    const auto idx = IndexSet::range(1, d);
    ComplexMatrix out(idx, idx);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) out.values()(a, b) = vec(a * d + b);
    return out;
}

ComplexMatrix kernel_witness(const ComplexVector& phi) {
    const auto p = modulus_of_generator(phi, "kernel_witness");
    const auto report = check_generator(phi);
    if (report.admissible) throw ValidationError("kernel_witness: generator is admissible");
    const int d = p.value() - 1;
    const auto idx = IndexSet::range(1, d);
    if (!report.cond_i_holds) {
        // a1 = a character with c_phi(chi) = 0, placed in column 1 of S A.
        const CharacterTable chars(p);
        const int j = report.failing_characters.front();
        ComplexMatrix a2(idx, IndexSet::range(2, d));
        return s_inverse_apply(join_spectral({chars.character(j), a2}));
    }
    // A2' = (w (x) v) Omega1 with B_phi v = 0 and w = 1.
    Eigen::JacobiSVD<MatrixXc> svd(report.b_phi.values(), Eigen::ComputeFullV);
    const VectorXc v = svd.matrixV().col(svd.matrixV().cols() - 1);
    const VectorXc w = VectorXc::Ones(d);
    const MatrixXc a2 = w * v.adjoint() * omega1(p).values();
    return s_inverse_apply(join_spectral({ComplexVector(idx), ComplexMatrix(idx, IndexSet::range(2, d), a2)}));
}

}  // namespace affpr
