#include "affpr/prime_field.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "affpr/errors.hpp"

namespace affpr {

bool is_prime(int n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (int d = 3; static_cast<long long>(d) * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

PrimeModulus::PrimeModulus(int p) : p_(p) {
    if (p < 3) throw ValidationError("modulus must be a prime >= 3, got " + std::to_string(p));
    if (!is_prime(p)) throw ValidationError(std::to_string(p) + " is not prime");
}

int mod_pow(long long a, long long e, const PrimeModulus& p) {
    long long base = p.reduce(a);
    long long result = 1;
    while (e > 0) {
        if (e & 1) result = result * base % p.value();
        base = base * base % p.value();
        e >>= 1;
    }
    return static_cast<int>(result);
}

int mod_inverse(long long a, const PrimeModulus& p) {
    const int r = p.reduce(a);
    if (r == 0) throw ValidationError("not invertible: " + std::to_string(a) + " mod " + std::to_string(p.value()));
    // Extended Euclid on (r, p).
    long long old_r = r, cur_r = p.value(), old_s = 1, cur_s = 0;
    while (cur_r != 0) {
        const long long q = old_r / cur_r;
        old_r -= q * cur_r;
        std::swap(old_r, cur_r);
        old_s -= q * cur_s;
        std::swap(old_s, cur_s);
    }
    return p.reduce(old_s);
}

int multiplicative_order(int a, const PrimeModulus& p) {
    const int r = p.reduce(a);
    if (r == 0) throw ValidationError("zero has no multiplicative order");
    long long x = r;
    int order = 1;
    while (x != 1) {
        x = x * r % p.value();
        ++order;
    }
    return order;
}

int primitive_root(const PrimeModulus& p) {
    for (int g = 1; g < p.value(); ++g)
        if (multiplicative_order(g, p) == p.value() - 1) return g;
    throw NumericalError("no primitive root found");  // unreachable for primes
}

CharacterTable::CharacterTable(const PrimeModulus& p)
    : p_(p), g_(primitive_root(p)), log_(static_cast<std::size_t>(p.value()), -1) {
    const int n = p.value() - 1;
    long long x = 1;
    for (int k = 0; k < n; ++k) {
        log_[static_cast<std::size_t>(x)] = k;
        x = x * g_ % p.value();
    }
    roots_.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t)
        roots_.push_back(std::polar(1.0, 2.0 * std::numbers::pi * t / n));
}

int CharacterTable::log(long long l) const {
    const int r = p_.reduce(l);
    if (r == 0) throw ValidationError("discrete log of zero");
    return log_[static_cast<std::size_t>(r)];
}

Complex CharacterTable::operator()(int j, long long l) const {
    const int n = count();
    if (j < 0 || j >= n) throw ValidationError("character index out of range: " + std::to_string(j));
    const long long angle = static_cast<long long>(j) * log(l) % n;
    return roots_[static_cast<std::size_t>(angle)];
}

ComplexVector CharacterTable::character(int j) const {
    ComplexVector chi(IndexSet::range(1, p_.value() - 1));
    for (int l = 1; l < p_.value(); ++l) chi(l) = (*this)(j, l);
    return chi;
}

}  // namespace affpr
