#include "affpr/group_fourier.hpp"

#include "affpr/errors.hpp"
#include "affpr/harmonics.hpp"

namespace affpr {

GroupFunction::GroupFunction(const PrimeModulus& p)
    : p_(p), values_(VectorXc::Zero(static_cast<Eigen::Index>(p.value()) * (p.value() - 1))) {}

GroupFunction::GroupFunction(const PrimeModulus& p, VectorXc values) : p_(p), values_(std::move(values)) {
    if (values_.size() != static_cast<Eigen::Index>(p.value()) * (p.value() - 1))
        throw ValidationError("group function must have p(p-1) values");
}

Complex chi_tilde(const GroupFunction& f, const CharacterTable& chars, int j) {
    const int p = f.modulus().value();
    if (!(chars.modulus() == f.modulus())) throw ValidationError("chi_tilde: mismatched p");
    if (j < 0 || j > p - 2) throw ValidationError("chi_tilde: character index out of range");
    Complex acc = 0.0;
    for (int l = 1; l < p; ++l) {
        Complex column = 0.0;
        for (int k = 0; k < p; ++k) column += f(k, l);
        acc += column * chars(j, l);
    }
    return acc;
}

Complex chi_tilde(const GroupFunction& f, int j) { return chi_tilde(f, CharacterTable(f.modulus()), j); }

ComplexMatrix pi_hat0_transform(const GroupFunction& f) {
    const auto& p = f.modulus();
    const auto idx = IndexSet::range(1, p.value() - 1);
    ComplexMatrix out(idx, idx);
    // pi_hat0(k,l) has its only nonzero in row m at column l m.
    for (int l = 1; l < p.value(); ++l)
        for (int m = 1; m < p.value(); ++m) {
            Complex acc = 0.0;
            for (int k = 0; k < p.value(); ++k) acc += f(k, l) * unit_root(static_cast<long long>(k) * m, p);
            out(m, p.reduce(static_cast<long long>(l) * m)) += acc;
        }
    return out;
}

AffineFourierCoefficients fourier_transform(const GroupFunction& f) {
    const CharacterTable chars(f.modulus());
    VectorXc scalars(chars.count());
    for (int j = 0; j < chars.count(); ++j) scalars(j) = chi_tilde(f, chars, j);
    return {std::move(scalars), pi_hat0_transform(f)};
}

GroupFunction fourier_invert(const AffineFourierCoefficients& c, const PrimeModulus& p) {
    const CharacterTable chars(p);
    const auto idx = IndexSet::range(1, p.value() - 1);
    if (c.scalar_part.size() != chars.count()) throw ValidationError("fourier_invert: wrong number of characters");
    require_index(c.matrix_part, idx, idx, "fourier_invert");
    const double order = static_cast<double>(p.value()) * (p.value() - 1);
    GroupFunction out(p);
    for (int l = 1; l < p.value(); ++l) {
        Complex scalar = 0.0;
        for (int j = 0; j < chars.count(); ++j) scalar += c.scalar_part(j) * std::conj(chars(j, l));
        for (int k = 0; k < p.value(); ++k) {
            // trace(M pi_hat0(k,l)^*) = sum_m M(m, lm) conj(exp(-2 pi i k m / p)).
            Complex tr = 0.0;
            for (int m = 1; m < p.value(); ++m)
                tr += c.matrix_part(m, p.reduce(static_cast<long long>(l) * m)) *
                      std::conj(unit_root(static_cast<long long>(k) * m, p));
            out(k, l) = (scalar + static_cast<double>(p.value() - 1) * tr) / order;
        }
    }
    return out;
}

double plancherel_norm_squared(const AffineFourierCoefficients& c, const PrimeModulus& p) {
    const double order = static_cast<double>(p.value()) * (p.value() - 1);
    return (c.scalar_part.squaredNorm() + (p.value() - 1) * c.matrix_part.values().squaredNorm()) / order;
}

GroupFunction left_translate(const GroupFunction& f, const AffineElement& x) {
    const auto x_inv = inverse(x);
    GroupFunction out(f.modulus());
    for (const auto& y : enumerate(f.modulus())) out[y] = f[multiply(x_inv, y)];
    return out;
}

}  // namespace affpr
