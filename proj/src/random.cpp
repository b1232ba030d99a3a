#include "affpr/random.hpp"

#include <cstdlib>
#include <numbers>
#include <string>

namespace affpr {

std::uint64_t seed_from_environment() {
    if (const char* env = std::getenv("SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
        }
    }
    return kDefaultSeed;
}

ComplexVector random_vector(const IndexSet& index, Rng& rng) {
    std::normal_distribution<double> normal;
    ComplexVector v(index);
    for (Eigen::Index i = 0; i < v.values().size(); ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v.values()(i) = {re, im};
    }
    return v;
}

ComplexMatrix random_matrix(const IndexSet& rows, const IndexSet& cols, Rng& rng) {
    std::normal_distribution<double> normal;
    ComplexMatrix a(rows, cols);
    for (Eigen::Index c = 0; c < a.values().cols(); ++c)
        for (Eigen::Index r = 0; r < a.values().rows(); ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            a.values()(r, c) = {re, im};
        }
    return a;
}

ComplexVector random_real_vector(const IndexSet& index, Rng& rng) {
    std::normal_distribution<double> normal;
    ComplexVector v(index);
    for (Eigen::Index i = 0; i < v.values().size(); ++i) v.values()(i) = normal(rng);
    return v;
}

ComplexVector random_h0_vector(int n, Rng& rng) {
    auto v = random_vector(IndexSet::range(0, n - 1), rng);
    v.values().array() -= v.values().mean();
    return v;
}

ComplexVector random_real_h0_vector(int n, Rng& rng) {
    auto v = random_real_vector(IndexSet::range(0, n - 1), rng);
    v.values().array() -= v.values().mean();
    return v;
}

Complex random_phase(Rng& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    return std::polar(1.0, angle(rng));
}

}  // namespace affpr
