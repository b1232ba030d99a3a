#include <cmath>

#include "affpr/errors.hpp"
#include "affpr/group_fourier.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace affpr;
using namespace affpr::testing;

namespace {

GroupFunction random_group_function(const PrimeModulus& p, Rng& rng) {
    const int n = p.value() * (p.value() - 1);
    return GroupFunction(p, random_vector(IndexSet::range(0, n - 1), rng).values());
}

GroupFunction indicator(const AffineElement& x) {
    GroupFunction f(x.modulus());
    f[x] = 1.0;
    return f;
}

// Direct enumeration over group elements, independent of the library's loop structure.
Complex brute_chi_tilde(const GroupFunction& f, const CharacterTable& chars, int j) {
    Complex sum = 0.0;
    for (const auto& x : enumerate(f.modulus())) sum += f[x] * chars(j, x.l());
    return sum;
}

MatrixXc brute_pi_hat0(const GroupFunction& f) {
    const int p = f.modulus().value();
    MatrixXc sum = MatrixXc::Zero(p - 1, p - 1);
    for (const auto& x : enumerate(f.modulus())) sum += f[x] * pi_hat0_matrix(x).values();
    return sum;
}

}  // namespace

TEST_CASE("chi_tilde examples") {
    for (int p : kTestPrimes) {
        const PrimeModulus mod(p);
        GroupFunction one(mod, VectorXc::Ones(p * (p - 1)));
        CHECK(std::abs(chi_tilde(one, 0) - Complex(p * (p - 1), 0)) < 1e-12);
        for (int j = 1; j < p - 1; ++j) CHECK(std::abs(chi_tilde(one, j)) < 1e-11);
        const auto e = indicator(identity(mod));
        for (int j = 0; j < p - 1; ++j) CHECK(std::abs(chi_tilde(e, j) - 1.0) < 1e-15);
        CHECK_THROWS_AS(chi_tilde(e, p - 1), ValidationError);
        CHECK_THROWS_AS(chi_tilde(e, -1), ValidationError);
    }
    auto rng = test_rng(20);
    const PrimeModulus p5(5);
    const CharacterTable chars(p5);
    const auto f = random_group_function(p5, rng);
    for (int j = 0; j < 4; ++j) CHECK(std::abs(chi_tilde(f, chars, j) - brute_chi_tilde(f, chars, j)) < 1e-12);
}

TEST_CASE("matrix part examples") {
    auto rng = test_rng(21);
    for (int p : kTestPrimes) {
        const PrimeModulus mod(p);
        CHECK(max_abs(pi_hat0_transform(indicator(identity(mod))).values() - MatrixXc::Identity(p - 1, p - 1)) ==
              0.0);
        GroupFunction one(mod, VectorXc::Ones(p * (p - 1)));
        CHECK(max_abs(pi_hat0_transform(one).values()) < 1e-11);
        const auto f = random_group_function(mod, rng);
        CHECK(max_abs(pi_hat0_transform(f).values() - brute_pi_hat0(f)) < 1e-11);
    }
}

TEST_CASE("inversion and Plancherel") {
    auto rng = test_rng(22);
    for (int p : kTestPrimes) {
        const PrimeModulus mod(p);
        const auto e = indicator(identity(mod));
        CHECK(max_abs(fourier_invert(fourier_transform(e), mod).values() - e.values()) < 1e-12);
        for (int trial = 0; trial < 50; ++trial) {
            const auto f = random_group_function(mod, rng);
            const auto c = fourier_transform(f);
            const double scale = f.values().norm();
            CHECK(max_abs(fourier_invert(c, mod).values() - f.values()) < 1e-10 * scale);
            CHECK(std::abs(plancherel_norm_squared(c, mod) - f.values().squaredNorm()) < 1e-10 * scale * scale);

            // Coefficients -> function -> coefficients.
            AffineFourierCoefficients d{random_vector(IndexSet::range(0, p - 2), rng).values(),
                                        random_matrix(IndexSet::range(1, p - 1), IndexSet::range(1, p - 1), rng)};
            const auto back = fourier_transform(fourier_invert(d, mod));
            CHECK(max_abs(back.scalar_part - d.scalar_part) < 1e-10 * d.scalar_part.norm());
            CHECK(max_abs(back.matrix_part.values() - d.matrix_part.values()) < 1e-10 * d.matrix_part.norm());
        }
    }
}

TEST_CASE("left translation acts by characters and pi_hat0") {
    auto rng = test_rng(23);
    for (int p : {3, 5, 7}) {
        const PrimeModulus mod(p);
        const auto f = random_group_function(mod, rng);
        for (const auto& x : enumerate(mod)) {
            const auto g = left_translate(f, x);
            for (int j = 0; j < p - 1; ++j)
                CHECK(std::abs(std::abs(chi_tilde(g, j)) - std::abs(chi_tilde(f, j))) < 1e-10);
            const MatrixXc want = pi_hat0_matrix(x).values() * pi_hat0_transform(f).values();
            CHECK(max_abs(pi_hat0_transform(g).values() - want) < 1e-10);
        }
    }
}

TEST_CASE("group function validates its size") {
    CHECK_THROWS_AS(GroupFunction(PrimeModulus(5), VectorXc::Zero(19)), ValidationError);
    CHECK(GroupFunction(PrimeModulus(5)).size() == 20);
}
