#pragma once

#include <vector>

#include "affpr/types.hpp"

namespace affpr {

/// An odd prime p >= 3. Construction validates primality.
class PrimeModulus {
public:
    explicit PrimeModulus(int p);

    int value() const { return p_; }
    operator int() const { return p_; }

    /// Canonical representative in {0..p-1}.
    int reduce(long long a) const {
        const long long r = a % p_;
        return static_cast<int>(r < 0 ? r + p_ : r);
    }

    bool operator==(const PrimeModulus& other) const { return p_ == other.p_; }

private:
    int p_;
};

bool is_prime(int n);

/// Inverse of a in Z_p*; throws ValidationError("not invertible") if a = 0 mod p.
int mod_inverse(long long a, const PrimeModulus& p);

/// a^e mod p for e >= 0.
int mod_pow(long long a, long long e, const PrimeModulus& p);

/// Multiplicative order of a in Z_p*.
int multiplicative_order(int a, const PrimeModulus& p);

/// Smallest generator of Z_p*.
int primitive_root(const PrimeModulus& p);

/// Characters of Z_p*, indexed by j in {0..p-2} relative to the smallest
/// primitive root g: chi_j(g^k) = exp(2 pi i jk / (p-1)).
class CharacterTable {
public:
    explicit CharacterTable(const PrimeModulus& p);

    const PrimeModulus& modulus() const { return p_; }
    int generator() const { return g_; }
    int count() const { return p_.value() - 1; }

    /// chi_j(l) for l in {1..p-1} (arguments are reduced mod p).
    Complex operator()(int j, long long l) const;

    /// Discrete logarithm: k with g^k = l.
    int log(long long l) const;

    /// chi_j as a vector on labels {1..p-1}.
    ComplexVector character(int j) const;

private:
    PrimeModulus p_;
    int g_;
    std::vector<int> log_;     // log_[l] for l in 1..p-1
    std::vector<Complex> roots_;  // exp(2 pi i t / (p-1))
};

}  // namespace affpr
