#pragma once

#include <vector>

#include "affpr/prime_field.hpp"
#include "affpr/types.hpp"

namespace affpr {

/// One-line notation: h[i] is the image of i.
using Permutation = std::vector<int>;

bool is_permutation(const Permutation& h);
/// (a . b)(i) = a[b[i]].
Permutation compose(const Permutation& a, const Permutation& b);
Permutation invert(const Permutation& h);

/// All n! permutations of {0..n-1} in lexicographic order.
std::vector<Permutation> symmetric_group(int n);
/// Group generated by the given permutations, sorted lexicographically.
std::vector<Permutation> generated_group(const std::vector<Permutation>& generators);
/// m -> k + l m on Z_p, in the canonical (l outer, k inner) order.
std::vector<Permutation> affine_permutations(const PrimeModulus& p);
/// PGL(2,q) on the projective line {0..q-1} and infinity = q; sharply 3-transitive.
std::vector<Permutation> projective_linear_group(const PrimeModulus& q);

/// True iff the group maps some ordered t-tuple of distinct points onto every other one.
/// Assumes `group` is closed under composition; validates each entry is a permutation of the same size.
bool is_t_transitive(const std::vector<Permutation>& group, int t);

/// (Pi(h) f)(h(i)) = f(i), i.e. (Pi(h) f)(m) = f(h^{-1}(m)).
ComplexVector permute(const Permutation& h, const ComplexVector& f);

}  // namespace affpr
