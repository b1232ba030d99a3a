#include "affpr/affine_group.hpp"

#include <string>

#include "affpr/errors.hpp"
#include "affpr/harmonics.hpp"

namespace affpr {

AffineElement::AffineElement(const PrimeModulus& p, long long k, long long l)
    : p_(p), k_(p.reduce(k)), l_(p.reduce(l)) {
    if (l_ == 0) throw ValidationError("affine element needs l invertible mod p");
}

AffineElement identity(const PrimeModulus& p) { return {p, 0, 1}; }

AffineElement multiply(const AffineElement& x, const AffineElement& y) {
    if (!(x.modulus() == y.modulus())) throw ValidationError("multiply: mismatched p");
    const long long k = x.k() + static_cast<long long>(x.l()) * y.k();
    const long long l = static_cast<long long>(x.l()) * y.l();
    return {x.modulus(), k, l};
}

AffineElement inverse(const AffineElement& x) {
    const int l_inv = mod_inverse(x.l(), x.modulus());
    return {x.modulus(), -static_cast<long long>(l_inv) * x.k(), l_inv};
}

std::vector<AffineElement> enumerate(const PrimeModulus& p) {
    std::vector<AffineElement> out;
    out.reserve(static_cast<std::size_t>(p.value()) * (p.value() - 1));
    for (int l = 1; l < p.value(); ++l)
        for (int k = 0; k < p.value(); ++k) out.emplace_back(p, k, l);
    return out;
}

AffineElement element_at(const PrimeModulus& p, int index) {
    if (index < 0 || index >= p.value() * (p.value() - 1))
        throw ValidationError("group element index out of range");
    return {p, index % p.value(), index / p.value() + 1};
}

int act(const AffineElement& x, int m) {
    return x.modulus().reduce(x.k() + static_cast<long long>(x.l()) * m);
}

ComplexMatrix pi_matrix(const AffineElement& x) {
    const int p = x.modulus().value();
    const auto idx = IndexSet::range(0, p - 1);
    ComplexMatrix out(idx, idx);
    // Column n carries f(n) to row k + l n.
    for (int n = 0; n < p; ++n) out(act(x, n), n) = 1.0;
    return out;
}

ComplexVector pi_apply(const AffineElement& x, const ComplexVector& f) {
    const auto& p = x.modulus();
    require_index(f, IndexSet::range(0, p.value() - 1), "pi_apply");
    const int l_inv = mod_inverse(x.l(), p);
    ComplexVector out(f.index());
    for (int m = 0; m < p.value(); ++m)
        out(m) = f(p.reduce(static_cast<long long>(l_inv) * (m - x.k())));
    return out;
}

ComplexMatrix pi_hat_matrix(const AffineElement& x) {
    const auto& p = x.modulus();
    const auto idx = IndexSet::range(0, p.value() - 1);
    ComplexMatrix out(idx, idx);
    for (int m = 0; m < p.value(); ++m)
        out(m, p.reduce(static_cast<long long>(x.l()) * m)) = unit_root(static_cast<long long>(x.k()) * m, p);
    return out;
}

ComplexMatrix pi_hat0_matrix(const AffineElement& x) {
    const auto& p = x.modulus();
    const auto idx = IndexSet::range(1, p.value() - 1);
    ComplexMatrix out(idx, idx);
    for (int m = 1; m < p.value(); ++m)
        out(m, p.reduce(static_cast<long long>(x.l()) * m)) = unit_root(static_cast<long long>(x.k()) * m, p);
    return out;
}

ComplexVector pi_hat0_apply(const AffineElement& x, const ComplexVector& phi) {
    const auto& p = x.modulus();
    require_index(phi, IndexSet::range(1, p.value() - 1), "pi_hat0_apply");
    ComplexVector out(phi.index());
    for (int m = 1; m < p.value(); ++m)
        out(m) = unit_root(static_cast<long long>(x.k()) * m, p) * phi(p.reduce(static_cast<long long>(x.l()) * m));
    return out;
}

PrimeModulus modulus_of_square(const ComplexMatrix& a, const char* what) {
    if (a.rows().empty()) throw ValidationError(std::string(what) + ": empty matrix");
    const int p = static_cast<int>(a.rows().size()) + 1;
    if (!is_prime(p) || p < 3) throw ValidationError(std::string(what) + ": matrix is not indexed by {1..p-1}");
    const auto idx = IndexSet::range(1, p - 1);
    require_index(a, idx, idx, what);
    return PrimeModulus(p);
}

namespace {

void require_same_p(const AffineElement& x, const PrimeModulus& p, const char* what) {
    if (!(x.modulus() == p)) throw ValidationError(std::string(what) + ": dimension mismatch");
}

}  // namespace

ComplexMatrix rho1_apply(const AffineElement& x, const ComplexMatrix& a) {
    const auto p = modulus_of_square(a, "rho1_apply");
    require_same_p(x, p, "rho1_apply");
    ComplexMatrix out(a.rows(), a.cols());
    for (int m = 1; m < p; ++m)
        for (int n = 1; n < p; ++n)
            out(m, n) = unit_root(static_cast<long long>(x.k()) * (m - n), p) *
                        a(p.reduce(static_cast<long long>(x.l()) * m), p.reduce(static_cast<long long>(x.l()) * n));
    return out;
}

ComplexMatrix s_apply(const ComplexMatrix& a) {
    const auto p = modulus_of_square(a, "s_apply");
    ComplexMatrix out(a.rows(), a.cols());
    for (int m = 1; m < p; ++m) {
        out(m, 1) = a(p.reduce(-m), p.reduce(-m));
        for (int n = 2; n < p; ++n) {
            const long long q = mod_inverse(1 - n, p);
            out(m, n) = a(p.reduce(m * q), p.reduce(static_cast<long long>(m) * n % p * q));
        }
    }
    return out;
}

ComplexMatrix s_inverse_apply(const ComplexMatrix& a) {
    const auto p = modulus_of_square(a, "s_inverse_apply");
    ComplexMatrix out(a.rows(), a.cols());
    for (int m = 1; m < p; ++m)
        for (int n = 1; n < p; ++n)
            out(m, n) = (n == m) ? a(p.reduce(-m), 1)
                                 : a(p.reduce(m - n), p.reduce(static_cast<long long>(mod_inverse(m, p)) * n));
    return out;
}

ComplexMatrix rho2_apply(const AffineElement& x, const ComplexMatrix& a) {
    const auto p = modulus_of_square(a, "rho2_apply");
    require_same_p(x, p, "rho2_apply");
    ComplexMatrix out(a.rows(), a.cols());
    for (int m = 1; m < p; ++m) {
        const int lm = p.reduce(static_cast<long long>(x.l()) * m);
        out(m, 1) = a(lm, 1);
        const Complex phase = unit_root(static_cast<long long>(x.k()) * m, p);
        for (int n = 2; n < p; ++n) out(m, n) = phase * a(lm, n);
    }
    return out;
}

ComplexMatrix omega0(const PrimeModulus& p) {
    const auto idx = IndexSet::range(1, p.value() - 1);
    ComplexMatrix out(idx, idx);
    for (int m = 1; m < p.value(); ++m) out(m, p.reduce(-m)) = 1.0;
    return out;
}

ComplexMatrix omega1(const PrimeModulus& p) {
    ComplexMatrix out(IndexSet::range(1, p.value() - 2), IndexSet::range(2, p.value() - 1));
    for (int n = 1; n <= p.value() - 2; ++n) out(n, p.reduce(1 + mod_inverse(n, p))) = 1.0;
    return out;
}

SpectralDecomposition split_spectral(const ComplexMatrix& sa) {
    const auto p = modulus_of_square(sa, "split_spectral");
    const Eigen::Index d = p.value() - 1;
    return {ComplexVector(IndexSet::range(1, p.value() - 1), sa.values().col(0)),
            ComplexMatrix(IndexSet::range(1, p.value() - 1), IndexSet::range(2, p.value() - 1),
                          sa.values().rightCols(d - 1))};
}

ComplexMatrix join_spectral(const SpectralDecomposition& parts) {
    const int p = static_cast<int>(parts.a1.size()) + 1;
    const auto rows = IndexSet::range(1, p - 1);
    require_index(parts.a1, rows, "join_spectral");
    require_index(parts.a2prime, rows, IndexSet::range(2, p - 1), "join_spectral");
    ComplexMatrix out(rows, rows);
    out.values().col(0) = parts.a1.values();
    out.values().rightCols(p - 2) = parts.a2prime.values();
    return out;
}

}  // namespace affpr
