#include "affpr/heisenberg.hpp"

#include <cmath>
#include <limits>

#include "affpr/errors.hpp"
#include "affpr/harmonics.hpp"
#include "affpr/matrix_recovery.hpp"

namespace affpr {

namespace {

int reduce(long long t, int n) {
    const long long r = t % n;
    return static_cast<int>(r < 0 ? r + n : r);
}

int size_of(const ComplexVector& phi, const char* what) {
    const int n = static_cast<int>(phi.size());
    require_heisenberg_size(n);
    require_index(phi, IndexSet::range(0, n - 1), what);
    return n;
}

// pi(k,l) v without forming the matrix.
VectorXc apply(int k, int l, const VectorXc& v) {
    const int n = static_cast<int>(v.size());
    VectorXc out(n);
    for (int y = 0; y < n; ++y) out(y) = std::conj(unit_root(static_cast<long long>(l) * y, n)) * v(reduce(y - k, n));
    return out;
}

}  // namespace

HeisenbergTable::HeisenbergTable(int n) : HeisenbergTable(n, MatrixXc::Zero(n < 2 ? 0 : n, n < 2 ? 0 : n)) {}

HeisenbergTable::HeisenbergTable(int n, MatrixXc values) : n_(n), values_(std::move(values)) {
    require_heisenberg_size(n);
    if (values_.rows() != n || values_.cols() != n) throw ValidationError("Heisenberg table must be n x n");
}

VectorXc HeisenbergTable::flatten() const {
    VectorXc flat(n_ * n_);
    for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) flat(k * n_ + l) = values_(k, l);
    return flat;
}

HeisenbergTable HeisenbergTable::unflatten(int n, const VectorXc& flat) {
    require_heisenberg_size(n);
    if (flat.size() != static_cast<Eigen::Index>(n) * n) throw ValidationError("Heisenberg table needs n^2 values");
    HeisenbergTable t(n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) t(k, l) = flat(k * n + l);
    return t;
}

void require_heisenberg_size(int n) {
    if (n < 2) throw ValidationError("Heisenberg group needs n >= 2");
}

ComplexMatrix schrodinger_matrix(int k, int l, int n) {
    require_heisenberg_size(n);
    const auto idx = IndexSet::range(0, n - 1);
    ComplexMatrix m(idx, idx);
    for (int y = 0; y < n; ++y)
        m.values()(y, reduce(y - k, n)) = std::conj(unit_root(static_cast<long long>(reduce(l, n)) * y, n));
    return m;
}

Complex conjugation_eigenvalue(int k, int l, int k2, int l2, int n) {
    return unit_root(static_cast<long long>(l2) * k - static_cast<long long>(l) * k2, n);
}

AmbiguityTable ambiguity(const ComplexVector& phi) {
    const int n = size_of(phi, "ambiguity");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    AmbiguityTable t(n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) t(k, l) = scale * apply(k, l, phi.values()).dot(phi.values());
    return t;
}

HeisenbergReport heisenberg_report(const ComplexVector& phi) {
    HeisenbergReport r;
    r.ambiguity = ambiguity(phi);
    r.n = r.ambiguity.n();
    r.min_modulus = std::numeric_limits<double>::infinity();
    for (int k = 0; k < r.n; ++k)
        for (int l = 0; l < r.n; ++l) {
            const double m = std::abs(r.ambiguity(k, l));
            if (m < r.min_modulus) {
                r.min_modulus = m;
                r.zero_k = k;
                r.zero_l = l;
            }
        }
    r.admissible = r.min_modulus > kAmbiguityTolerance * phi.values().squaredNorm();
    if (r.admissible) r.zero_k = r.zero_l = -1;
    return r;
}

bool check_generator_h(const ComplexVector& phi) { return heisenberg_report(phi).admissible; }

HeisenbergTable h_forward(const ComplexMatrix& a, const ComplexVector& phi) {
    const int n = size_of(phi, "h_forward");
    const auto idx = IndexSet::range(0, n - 1);
    require_index(a, idx, idx, "h_forward");
    HeisenbergTable f(n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            const VectorXc v = apply(k, l, phi.values());
            f(k, l) = v.dot(a.values() * v);
        }
    return f;
}

HeisenbergTable h_intensity(const ComplexVector& f, const ComplexVector& phi) {
    const int n = size_of(phi, "h_intensity");
    require_index(f, phi.index(), "h_intensity");
    HeisenbergTable out(n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out(k, l) = std::norm(apply(k, l, phi.values()).dot(f.values()));
    return out;
}

ComplexMatrix h_recover(const HeisenbergTable& f, const ComplexVector& phi) {
    const int n = size_of(phi, "h_recover");
    if (f.n() != n) throw ValidationError("h_recover: measurement size does not match generator");
    const auto report = heisenberg_report(phi);
    if (!report.admissible)
        throw ValidationError("h_recover: ambiguity function vanishes at (" + std::to_string(report.zero_k) + "," +
                              std::to_string(report.zero_l) + ")");
    const auto idx = IndexSet::range(0, n - 1);
    ComplexMatrix a(idx, idx);
    const double root_n = std::sqrt(static_cast<double>(n));
    const double inv_n2 = 1.0 / (static_cast<double>(n) * n);
    for (int k2 = 0; k2 < n; ++k2)
        for (int l2 = 0; l2 < n; ++l2) {
            Complex f_hat = 0.0;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) f_hat += f(k, l) * conjugation_eigenvalue(k, l, k2, l2, n);
            // <pi(x) phi, phi> = sqrt(n) conj(A_phi(x)).
            const Complex coeff = inv_n2 * f_hat / (root_n * std::conj(report.ambiguity(k2, l2)));
            a.values() += coeff * schrodinger_matrix(k2, l2, n).values();
        }
    return a;
}

ComplexVector h_recover_vector(const HeisenbergTable& f, const ComplexVector& phi) {
    return extract_rank_one(h_recover(f, phi));
}

MatrixXc h_full_map(const ComplexVector& phi) {
    const int n = size_of(phi, "h_full_map");
    MatrixXc map(n * n, n * n);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            const VectorXc v = apply(k, l, phi.values());
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) map(k * n + l, a * n + b) = std::conj(v(a)) * v(b);
        }
    return map;
}

int h_oracle_rank(const ComplexVector& phi) { return numerical_rank(h_full_map(phi), kRankTolerance); }

}  // namespace affpr
