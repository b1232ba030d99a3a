#include <cmath>

#include "affpr/affine_group.hpp"
#include "affpr/errors.hpp"
#include "affpr/harmonics.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace affpr;
using namespace affpr::testing;

namespace {

IndexSet nonzero(int p) { return IndexSet::range(1, p - 1); }

}  // namespace

TEST_CASE("group law, inverse and enumeration") {
    const PrimeModulus p5(5);
    const AffineElement x(p5, 1, 2);
    CHECK(multiply(x, x) == AffineElement(p5, 3, 4));
    CHECK(inverse(x) == AffineElement(p5, 2, 3));
    CHECK(multiply(identity(p5), x) == x);
    CHECK_THROWS_AS(AffineElement(p5, 1, 0), ValidationError);
    CHECK_THROWS_AS(multiply(x, identity(PrimeModulus(7))), ValidationError);

    const auto all = enumerate(p5);
    REQUIRE(all.size() == 20);
    CHECK(all[0] == AffineElement(p5, 0, 1));
    CHECK(all[1] == AffineElement(p5, 1, 1));
    CHECK(all[5] == AffineElement(p5, 0, 2));
    for (int i = 0; i < 20; ++i) {
        CHECK(all[static_cast<std::size_t>(i)].index() == i);
        CHECK(element_at(p5, i) == all[static_cast<std::size_t>(i)]);
    }

    for (int p : {3, 5}) {
        const auto g = enumerate(PrimeModulus(p));
        const auto e = identity(PrimeModulus(p));
        for (const auto& a : g) {
            CHECK(multiply(a, inverse(a)) == e);
            CHECK(multiply(inverse(a), a) == e);
            for (const auto& b : g)
                for (const auto& c : g) CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
        }
    }
}

TEST_CASE("quasiregular representation") {
    const PrimeModulus p5(5);
    CHECK(max_abs(pi_matrix(identity(p5)).values() - MatrixXc::Identity(5, 5)) == 0.0);
    CHECK(max_diff(pi_apply(AffineElement(p5, 1, 1), delta(5, 0)), delta(5, 1)) == 0.0);
    CHECK(max_diff(pi_apply(AffineElement(p5, 0, 2), delta(5, 1)), delta(5, 2)) == 0.0);

    auto rng = test_rng(10);
    for (int p : kTestPrimes) {
        const PrimeModulus mod(p);
        for (const auto& x : enumerate(mod)) {
            const auto m = pi_matrix(x).values();
            CHECK(max_abs(m * m.adjoint() - MatrixXc::Identity(p, p)) == 0.0);
            CHECK(m.imag().cwiseAbs().maxCoeff() == 0.0);
            for (int trial = 0; trial < 10; ++trial) {
                const auto f = random_vector(IndexSet::range(0, p - 1), rng);
                CHECK(max_abs(m * f.values() - pi_apply(x, f).values()) < 1e-15);
            }
            // 1 is fixed and zero-sum vectors stay zero-sum.
            CHECK(max_abs(m * VectorXc::Ones(p) - VectorXc::Ones(p)) == 0.0);
            const auto h = random_h0_vector(p, rng);
            CHECK(std::abs((m * h.values()).sum()) < 1e-12);
        }
    }
}

TEST_CASE("pi is a homomorphism") {
    for (int p : {3, 5}) {
        const auto g = enumerate(PrimeModulus(p));
        for (const auto& x : g)
            for (const auto& y : g)
                CHECK(max_abs(pi_matrix(multiply(x, y)).values() - pi_matrix(x).values() * pi_matrix(y).values()) <
                      1e-12);
    }
}

TEST_CASE("Fourier-side representation") {
    for (int p : kTestPrimes) {
        const PrimeModulus mod(p);
        const MatrixXc u = dft_matrix(p);
        CHECK(max_abs(pi_hat_matrix(identity(mod)).values() - MatrixXc::Identity(p, p)) == 0.0);
        for (const auto& x : enumerate(mod)) {
            const auto hat = pi_hat_matrix(x);
            CHECK(max_abs(u * pi_matrix(x).values() * u.adjoint() - hat.values()) < 1e-12);
            CHECK(max_abs(hat.values() * hat.values().adjoint() - MatrixXc::Identity(p, p)) < 1e-13);
            for (int m = 0; m < p; ++m)
                for (int n = 0; n < p; ++n) {
                    if (n == x.l() * m % p) {
                        CHECK(std::abs(hat(m, n) - unit_root(static_cast<long long>(x.k()) * m, p)) == 0.0);
                    } else {
                        CHECK(hat(m, n) == Complex(0.0, 0.0));
                    }
                }
            const auto hat0 = pi_hat0_matrix(x);
            CHECK(max_abs(hat0.values() - hat.values().bottomRightCorner(p - 1, p - 1)) == 0.0);
            CHECK(max_abs(hat0.values() * hat0.values().adjoint() - MatrixXc::Identity(p - 1, p - 1)) < 1e-13);
        }
    }

    // pi preserves real vectors; its Fourier-side equivalent does not.
    const PrimeModulus p5(5);
    bool found_non_real = false;
    const auto f = delta(5, 1);
    for (const auto& x : enumerate(p5))
        if ((pi_hat_matrix(x).values() * f.values()).imag().cwiseAbs().maxCoeff() > 1e-3) found_non_real = true;
    CHECK(found_non_real);
}

TEST_CASE("rho1 pointwise formula matches conjugation") {
    auto rng = test_rng(11);
    for (int p : kTestPrimes) {
        const PrimeModulus mod(p);
        const auto a = random_matrix(nonzero(p), nonzero(p), rng);
        CHECK(max_diff(rho1_apply(identity(mod), a), a) == 0.0);
        for (const auto& x : enumerate(mod)) {
            const auto h = pi_hat0_matrix(x).values();
            const auto moved = rho1_apply(x, a);
            CHECK(max_abs(moved.values() - h * a.values() * h.adjoint()) < 1e-12);
            CHECK(std::abs(moved.norm() - a.norm()) < 1e-12 * a.norm());
        }
    }
    CHECK_THROWS_AS(rho1_apply(identity(PrimeModulus(5)), random_matrix(nonzero(7), nonzero(7), rng)),
                    ValidationError);
}

TEST_CASE("intertwiner S") {
    auto rng = test_rng(12);
    const PrimeModulus p3(3);
    const auto a3 = random_matrix(nonzero(3), nonzero(3), rng);
    CHECK(s_apply(a3)(1, 1) == a3(2, 2));

    for (int p : kTestPrimes) {
        const PrimeModulus mod(p);
        for (int trial = 0; trial < 10; ++trial) {
            const auto a = random_matrix(nonzero(p), nonzero(p), rng);
            CHECK(max_diff(s_inverse_apply(s_apply(a)), a) == 0.0);
            CHECK(max_diff(s_apply(s_inverse_apply(a)), a) == 0.0);
        }
        // S maps each basis matrix to a basis matrix, hitting every one exactly once.
        const int d = p - 1;
        std::vector<int> hits(static_cast<std::size_t>(d * d), 0);
        for (int m = 1; m < p; ++m)
            for (int n = 1; n < p; ++n) {
                ComplexMatrix e(nonzero(p), nonzero(p));
                e(m, n) = 1.0;
                const auto image = s_apply(e).values();
                CHECK(image.cwiseAbs().sum() == 1.0);
                Eigen::Index r = 0, c = 0;
                image.cwiseAbs().maxCoeff(&r, &c);
                ++hits[static_cast<std::size_t>(r * d + c)];
            }
        for (int h : hits) CHECK(h == 1);

        // rho2 = S rho1 S*, and column 1 / columns >= 2 are invariant.
        for (const auto& x : enumerate(mod)) {
            const auto a = random_matrix(nonzero(p), nonzero(p), rng);
            CHECK(max_diff(rho2_apply(x, a), s_apply(rho1_apply(x, s_inverse_apply(a)))) < 1e-12);
            ComplexMatrix col1(nonzero(p), nonzero(p));
            col1.values().col(0) = a.values().col(0);
            CHECK(max_abs(rho2_apply(x, col1).values().rightCols(d - 1)) == 0.0);
            ComplexMatrix rest = a;
            rest.values().col(0).setZero();
            CHECK(max_abs(rho2_apply(x, rest).values().col(0)) == 0.0);
        }
        CHECK(max_diff(rho2_apply(identity(mod), random_matrix(nonzero(p), nonzero(p), rng)),
                       rho2_apply(identity(mod), random_matrix(nonzero(p), nonzero(p), rng))) > 0.0);
    }
}

TEST_CASE("auxiliary permutations Omega0 and Omega1") {
    for (int p : kTestPrimes) {
        const PrimeModulus mod(p);
        const auto o0 = omega0(mod).values();
        CHECK(max_abs(o0 * o0 - MatrixXc::Identity(p - 1, p - 1)) == 0.0);
        const auto o1 = omega1(mod);
        CHECK(o1.rows() == IndexSet::range(1, p - 2));
        CHECK(o1.cols() == IndexSet::range(2, p - 1));
        CHECK(max_abs(o1.values() * o1.values().transpose() - MatrixXc::Identity(p - 2, p - 2)) == 0.0);
    }
    const auto o1 = omega1(PrimeModulus(5));
    VectorXc f(3);
    f << 2.0, 3.0, 4.0;  // f(2), f(3), f(4)
    VectorXc want(3);
    want << 2.0, 4.0, 3.0;
    CHECK(max_abs(o1.values() * f - want) == 0.0);
}

TEST_CASE("spectral split and join") {
    auto rng = test_rng(13);
    const auto a = random_matrix(nonzero(7), nonzero(7), rng);
    const auto parts = split_spectral(a);
    CHECK(parts.a1.index() == nonzero(7));
    CHECK(parts.a2prime.cols() == IndexSet::range(2, 6));
    CHECK(parts.a1(3) == a(3, 1));
    CHECK(parts.a2prime(4, 5) == a(4, 5));
    CHECK(max_diff(join_spectral(parts), a) == 0.0);
}
