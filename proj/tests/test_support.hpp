#pragma once

#include <initializer_list>

#include "affpr/random.hpp"
#include "affpr/types.hpp"

namespace affpr::testing {

inline constexpr std::initializer_list<int> kTestPrimes = {3, 5, 7, 11, 13};

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}
inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return max_abs(a.values() - b.values()); }
inline double max_diff(const ComplexVector& a, const ComplexVector& b) { return max_abs(a.values() - b.values()); }

inline double relative_frobenius(const MatrixXc& got, const MatrixXc& want) {
    const double scale = want.norm();
    return scale == 0.0 ? got.norm() : (got - want).norm() / scale;
}

inline Rng test_rng(std::uint64_t salt = 0) { return Rng(kDefaultSeed + salt); }

}  // namespace affpr::testing
