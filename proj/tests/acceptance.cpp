// Acceptance suite: one PASS/FAIL line per criterion at pinned tolerances.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "affpr/affine_group.hpp"
#include "affpr/errors.hpp"
#include "affpr/group_fourier.hpp"
#include "affpr/harmonics.hpp"
#include "affpr/heisenberg.hpp"
#include "affpr/matrix_recovery.hpp"
#include "affpr/permutations.hpp"
#include "affpr/random.hpp"
#include "affpr/retrieval_diagnostics.hpp"

using namespace affpr;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Detail {
public:
    template <typename T>
    Detail& operator()(const std::string& key, const T& value) {
        if (!text_.str().empty()) text_ << ", ";
        text_ << key << "=" << value;
        return *this;
    }
    std::string str() const { return text_.str(); }

private:
    std::ostringstream text_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

IndexSet nonzero(int p) { return IndexSet::range(1, p - 1); }

ComplexVector constant_generator(int p) { return {nonzero(p), VectorXc::Ones(p - 1)}; }

ComplexVector spike_generator(int p, int m) {
    ComplexVector v(nonzero(p));
    v(m) = 1.0;
    return v;
}

int legendre(int a, const PrimeModulus& p) { return mod_pow(a, (p.value() - 1) / 2, p) == 1 ? 1 : -1; }

// Positive weights |phi(m)|^2 with equal mass on m where -m is a residue and where it is not,
// so the quadratic character sum c_phi at j = (p-1)/2 vanishes; random phases on top.
ComplexVector zeroing_generator(int p, Rng& rng) {
    const PrimeModulus mod(p);
    std::uniform_real_distribution<double> weight(0.5, 2.0);
    Eigen::VectorXd w(p - 1);
    double plus = 0.0, minus = 0.0;
    for (int m = 1; m < p; ++m) {
        w(m - 1) = p == 3 ? 1.0 : weight(rng);
        (legendre(p - m, mod) == 1 ? plus : minus) += w(m - 1);
    }
    ComplexVector phi(nonzero(p));
    for (int m = 1; m < p; ++m) {
        const double scale = legendre(p - m, mod) == 1 ? 1.0 : plus / minus;
        phi(m) = std::sqrt(w(m - 1) * scale) * random_phase(rng);
    }
    return phi;
}

ComplexVector apply_phase(const ComplexVector& f, Complex alpha) { return {f.index(), alpha * f.values()}; }

ComplexVector restrict_window(const ComplexVector& psi0, int n) {
    ComplexVector psi(IndexSet::range(0, n - 1));
    for (int i = 0; i < 3; ++i) psi(i) = psi0(i);
    return psi;
}

// ---------------------------------------------------------------- criteria

Outcome basis_round_trip() {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int p : {3, 5, 7, 11, 13}) {
        const PrimeModulus mod(p);
        const auto phi = canonical_generator(mod);
        const RecoveryPlan plan(phi);
        for (int m = 1; m < p; ++m)
            for (int n = 1; n < p; ++n) {
                ComplexMatrix e(nonzero(p), nonzero(p));
                e(m, n) = 1.0;
                worst = std::max(worst, (plan.recover(forward_measure(e, phi)).values() - e.values()).norm());
            }
    }
    const double elapsed = seconds_since(start);
    return {worst <= 1e-9 && elapsed <= 60.0, Detail()("max_rel_err", worst)("seconds", elapsed).str()};
}

Outcome iff_equivalence(Rng& rng) {
    int cases = 0, agree = 0, crafted_inadmissible = 0;
    for (int p : {3, 5, 7}) {
        std::vector<ComplexVector> phis;
        for (int t = 0; t < 50; ++t) phis.push_back(random_vector(nonzero(p), rng));
        const std::vector<ComplexVector> crafted = {constant_generator(p), spike_generator(p, 2), zeroing_generator(p, rng)};
        phis.insert(phis.end(), crafted.begin(), crafted.end());
        const int full = (p - 1) * (p - 1);
        for (std::size_t i = 0; i < phis.size(); ++i) {
            const bool admissible = check_generator(phis[i]).admissible;
            const bool full_rank = oracle_rank(phis[i]) == full;
            ++cases;
            if (admissible == full_rank) ++agree;
            if (i >= 50 && !admissible) ++crafted_inadmissible;
        }
    }
    return {agree == cases && crafted_inadmissible == 9,
            Detail()("agree", std::to_string(agree) + "/" + std::to_string(cases))("crafted_inadmissible",
                                                                                    crafted_inadmissible)
                .str()};
}

Outcome phase_retrieval(Rng& rng) {
    double worst = 0.0, invariance = 0.0;
    for (int p : {5, 7}) {
        const auto phi = canonical_generator(PrimeModulus(p));
        for (int t = 0; t < 50; ++t) {
            const auto f = random_vector(nonzero(p), rng);
            const auto g = recover_vector(intensity_measure(f, phi), phi);
            worst = std::max(worst, phase_distance(g, f));
            const auto h = recover_vector(intensity_measure(apply_phase(f, random_phase(rng)), phi), phi);
            invariance = std::max(invariance, (h.values() - g.values()).cwiseAbs().maxCoeff());
        }
    }
    return {worst <= 1e-8 && invariance <= 1e-10, Detail()("max_phase_dist", worst)("max_phase_variation", invariance).str()};
}

Outcome necessity_witnesses(Rng& rng) {
    double worst = 0.0, smallest = 1e300;
    int count = 0;
    for (int p : {3, 5, 7})
        for (const auto& phi : {constant_generator(p), spike_generator(p, 2), zeroing_generator(p, rng)}) {
            const auto a = kernel_witness(phi);
            const double ratio = forward_measure(a, phi).values().cwiseAbs().maxCoeff() / a.norm();
            worst = std::max(worst, ratio);
            smallest = std::min(smallest, a.norm());
            ++count;
        }
    return {worst <= 1e-10 && smallest > 0.0,
            Detail()("witnesses", count)("max_ratio", worst)("min_norm", smallest).str()};
}

Outcome heisenberg_equivalence(Rng& rng) {
    int cases = 0, agree = 0;
    double worst = 0.0;
    for (int n = 2; n <= 5; ++n) {
        const auto idx = IndexSet::range(0, n - 1);
        std::vector<ComplexVector> phis;
        for (int t = 0; t < 50; ++t) phis.push_back(random_vector(idx, rng));
        phis.push_back(delta(n, 0));
        for (const auto& phi : phis) {
            const bool admissible = check_generator_h(phi);
            ++cases;
            if (admissible == (h_oracle_rank(phi) == n * n)) ++agree;
            if (!admissible) continue;
            const auto a = random_matrix(idx, idx, rng);
            const auto back = h_recover(h_forward(a, phi), phi);
            worst = std::max(worst, (back.values() - a.values()).norm() / a.norm());
        }
    }
    return {agree == cases && worst <= 1e-9,
            Detail()("agree", std::to_string(agree) + "/" + std::to_string(cases))("max_rel_err", worst).str()};
}

Outcome conjugate_phase_retrieval(Rng& rng) {
    double worst = 0.0;
    const std::vector<std::pair<int, std::vector<Permutation>>> cases = {
        {3, affine_permutations(PrimeModulus(3))},
        {5, affine_permutations(PrimeModulus(5))},
        {8, projective_linear_group(PrimeModulus(7))},
    };
    for (const auto& [n, group] : cases)
        for (int t = 0; t < 50; ++t) {
            const auto f = random_h0_vector(n, rng);
            const auto d = pairwise_moduli(difference_coefficients(f, 0, 1, group), 0, 1, group);
            worst = std::max(worst, conjugate_phase_distance(conjugate_phase_reconstruct(d).values(), f.values()));
        }
    return {worst <= 1e-8, Detail()("max_conj_phase_dist", worst).str()};
}

Outcome counterexample() {
    const auto r = verify_counterexample_n3();
    const bool identities = r.identity_modulus_residual <= 1e-12 && r.identity_real_residual <= 1e-12 &&
                            r.coefficient_residual <= 1e-12;
    const bool sums = r.y_sum == 0.0 && r.z_sum == 0.0;
    return {r.passed() && identities && sums && r.non_equivalent && r.constant_residual <= 1e-12,
            Detail()("identity_residual", std::max({r.identity_modulus_residual, r.identity_real_residual,
                                                    r.coefficient_residual}))("sums_zero", sums)(
                "non_equivalent", r.non_equivalent)("scaling", r.constant_scaling)("constant_residual",
                                                                                   r.constant_residual)
                .str()};
}

Outcome complement_scan(Rng& rng) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    Detail d;
    for (int p : {3, 5}) {
        FrameSystem fs = affine_orbit(random_real_h0_vector(p, rng));
        while (!(fs.dimension() == p - 1 && full_spark(fs))) fs = affine_orbit(random_real_h0_vector(p, rng));
        const auto r = complement_property(fs);
        const std::uint64_t expected = 1ULL << (p * (p - 1));
        ok = ok && r.holds && r.exhaustive && r.subsets_covered == expected;
        d("p" + std::to_string(p) + "_subsets", r.subsets_covered)("p" + std::to_string(p) + "_holds", r.holds);
    }
    const double elapsed = seconds_since(start);
    return {ok && elapsed <= 300.0, d("seconds", elapsed).str()};
}

Outcome three_transitive(Rng& rng) {
    double worst = 0.0;
    const auto psi0 = canonical_time_generator(PrimeModulus(3));
    for (int n : {4, 5}) {
        const auto group = symmetric_group(n);
        const auto psi = restrict_window(psi0, n);
        for (int t = 0; t < 20; ++t) {
            const auto f = random_h0_vector(n, rng);
            worst = std::max(worst, phase_distance(three_transitive_phase_retrieval(permutation_moduli(f, group, psi), group, psi0), f));
        }
    }
    return {worst <= 1e-6, Detail()("max_phase_dist", worst).str()};
}

Outcome projection_retrieval(Rng& rng) {
    double worst = 0.0;
    for (int p : {5, 7})
        for (int t = 0; t < 30; ++t) {
            const auto f = random_h0_vector(p, rng);
            worst = std::max(worst, phase_distance(recover_from_projections(projection_moduli(f)), f));
        }
    return {worst <= 1e-8, Detail()("max_phase_dist", worst).str()};
}

Outcome structural_invariants(Rng& rng) {
    double unitary = 0.0, homomorphism = 0.0, intertwining = 0.0, plancherel = 0.0, inversion = 0.0;
    for (int p : {3, 5, 7, 11, 13}) {
        const PrimeModulus mod(p);
        const MatrixXc u = dft_matrix(p);
        unitary = std::max(unitary, (u * u.adjoint() - MatrixXc::Identity(p, p)).cwiseAbs().maxCoeff());
        const auto elements = enumerate(mod);
        const auto d = nonzero(p);
        for (const auto& x : elements) {
            for (const MatrixXc& m : {pi_matrix(x).values(), pi_hat_matrix(x).values(), pi_hat0_matrix(x).values()})
                unitary = std::max(unitary, (m * m.adjoint() - MatrixXc::Identity(m.rows(), m.rows())).cwiseAbs().maxCoeff());
            const auto a = random_matrix(d, d, rng);
            unitary = std::max(unitary, std::abs(s_apply(a).norm() - a.norm()));
            intertwining = std::max(intertwining, (rho2_apply(x, s_apply(a)).values() - s_apply(rho1_apply(x, a)).values()).cwiseAbs().maxCoeff());
        }
        for (const auto& x : elements)
            for (const auto& y : elements) {
                const auto xy = multiply(x, y);
                homomorphism = std::max(homomorphism, (pi_matrix(xy).values() - pi_matrix(x).values() * pi_matrix(y).values()).cwiseAbs().maxCoeff());
                homomorphism = std::max(homomorphism, (pi_hat0_matrix(xy).values() - pi_hat0_matrix(x).values() * pi_hat0_matrix(y).values()).cwiseAbs().maxCoeff());
            }
        for (int t = 0; t < 10; ++t) {
            const GroupFunction f(mod, random_vector(IndexSet::range(0, p * (p - 1) - 1), rng).values());
            const auto c = fourier_transform(f);
            const double scale = f.values().squaredNorm();
            plancherel = std::max(plancherel, std::abs(plancherel_norm_squared(c, mod) - scale) / scale);
            inversion = std::max(inversion, (fourier_invert(c, mod).values() - f.values()).norm() / std::sqrt(scale));
        }
    }
    const bool ok = unitary <= 1e-12 && homomorphism <= 1e-12 && intertwining <= 1e-12 && plancherel <= 1e-10 && inversion <= 1e-10;
    return {ok, Detail()("unitarity", unitary)("homomorphism", homomorphism)("intertwining", intertwining)(
                    "plancherel", plancherel)("inversion", inversion)
                    .str()};
}

}  // namespace

int main() {
    Rng rng(seed_from_environment());
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"basis round trip", [] { return basis_round_trip(); }},
        {"admissibility iff full-rank oracle", [&] { return iff_equivalence(rng); }},
        {"phase retrieval end to end", [&] { return phase_retrieval(rng); }},
        {"necessity witnesses", [&] { return necessity_witnesses(rng); }},
        {"Heisenberg criterion equivalence", [&] { return heisenberg_equivalence(rng); }},
        {"conjugate phase retrieval", [&] { return conjugate_phase_retrieval(rng); }},
        {"n = 3 counterexample report", [] { return counterexample(); }},
        {"complement property scan", [&] { return complement_scan(rng); }},
        {"3-fold transitive pipeline", [&] { return three_transitive(rng); }},
        {"Fourier-projection phase retrieval", [&] { return projection_retrieval(rng); }},
        {"structural invariants", [&] { return structural_invariants(rng); }},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        if (!outcome.pass) ++failures;
        std::printf("%s [%zu] %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    outcome.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
