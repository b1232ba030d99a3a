#include "affpr/retrieval_diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <memory>
#include <queue>
#include <unordered_map>

#include "affpr/errors.hpp"
#include "affpr/harmonics.hpp"
#include "affpr/matrix_recovery.hpp"

namespace affpr {

namespace {

std::string one_line(const Permutation& h) {
    std::string s = "[";
    for (std::size_t i = 0; i < h.size(); ++i) s += (i ? "," : "") + std::to_string(h[i]);
    return s + "]";
}

std::string subset_name(const std::array<int, 3>& a) {
    return "{" + std::to_string(a[0]) + "," + std::to_string(a[1]) + "," + std::to_string(a[2]) + "}";
}

void require_zero_sum(const ComplexVector& f, const char* what) {
    if (std::abs(f.values().sum()) > 1e-10 * std::max(1.0, f.norm() * std::sqrt(double(f.size()))))
        throw ValidationError(std::string(what) + ": vector must have zero sum");
}

// Incremental span test over normalised vectors with one reorthogonalisation pass.
class SpanTester {
public:
    SpanTester(const MatrixXc& unit_columns, int dimension)
        : v_(unit_columns), d_(dimension), q_(unit_columns.rows(), std::max(dimension, 1)) {}

    template <typename Positions>
    bool spans(const Positions& positions) {
        if (d_ == 0) return true;
        int rank = 0;
        for (int i : positions) {
            VectorXc r = v_.col(i);
            for (int pass = 0; pass < 2; ++pass)
                for (int j = 0; j < rank; ++j) r -= q_.col(j) * q_.col(j).dot(r);
            const double n = r.norm();
            if (n > kRankTolerance * 100.0) {
                q_.col(rank++) = r / n;
                if (rank == d_) return true;
            }
        }
        return false;
    }

private:
    const MatrixXc& v_;
    int d_;
    MatrixXc q_;
};

MatrixXc unit_columns(const FrameSystem& fs) {
    MatrixXc m = fs.synthesis();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const double n = m.col(c).norm();
        if (n > 0.0) m.col(c) /= n;
    }
    return m;
}

}  // namespace

// ---------------------------------------------------------------- frames

FrameSystem::FrameSystem(std::vector<ComplexVector> vectors, std::vector<std::string> labels)
    : FrameSystem(std::move(vectors), std::move(labels), -1) {}

FrameSystem::FrameSystem(std::vector<ComplexVector> vectors, std::vector<std::string> labels, int dimension)
    : vectors_(std::move(vectors)), labels_(std::move(labels)) {
    if (vectors_.empty()) throw ValidationError("frame system needs at least one vector");
    for (const auto& v : vectors_) require_index(v, vectors_.front().index(), "frame system");
    if (labels_.empty())
        for (std::size_t i = 0; i < vectors_.size(); ++i) labels_.push_back(std::to_string(i));
    if (labels_.size() != vectors_.size()) throw ValidationError("frame system: one label per vector");
    dimension_ = dimension < 0 ? numerical_rank(synthesis(), kRankTolerance) : dimension;
    if (dimension_ > static_cast<int>(index().size())) throw ValidationError("frame system: dimension too large");
}

MatrixXc FrameSystem::synthesis() const {
    MatrixXc m(static_cast<Eigen::Index>(index().size()), static_cast<Eigen::Index>(vectors_.size()));
    for (std::size_t i = 0; i < vectors_.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vectors_[i].values();
    return m;
}

FrameSystem affine_orbit(const ComplexVector& psi) {
    const int p = static_cast<int>(psi.size());
    if (p < 3 || !is_prime(p)) throw ValidationError("affine_orbit: psi must live on Z_p");
    std::vector<ComplexVector> vs;
    std::vector<std::string> labels;
    for (const auto& x : enumerate(PrimeModulus(p))) {
        vs.push_back(pi_apply(x, psi));
        labels.push_back("(" + std::to_string(x.k()) + "," + std::to_string(x.l()) + ")");
    }
    return {std::move(vs), std::move(labels)};
}

FrameSystem permutation_orbit(const std::vector<Permutation>& group, const ComplexVector& psi) {
    std::vector<ComplexVector> vs;
    std::vector<std::string> labels;
    for (const auto& h : group) {
        if (!is_permutation(h)) throw ValidationError("permutation_orbit: invalid permutation " + one_line(h));
        vs.push_back(permute(h, psi));
        labels.push_back(one_line(h));
    }
    return {std::move(vs), std::move(labels)};
}

// ---------------------------------------------------------------- complement property

ComplementReport complement_property(const FrameSystem& fs) {
    const std::size_t n = fs.size();
    if (n > kMaxExhaustiveVectors)
        throw ValidationError("complement_property: " + std::to_string(n) +
                              " vectors exceed the exhaustive limit; use the sampled mode");
    const MatrixXc v = unit_columns(fs);
    SpanTester tester(v, fs.dimension());
    ComplementReport report;
    report.exhaustive = true;
    std::vector<int> s, c;
    // S and its complement play symmetric roles, so S always contains position 0.
    const std::uint64_t masks = std::uint64_t{1} << (n - 1);
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
        s.assign(1, 0);
        c.clear();
        for (std::size_t i = 1; i < n; ++i) ((mask >> (i - 1)) & 1U ? s : c).push_back(static_cast<int>(i));
        if (!tester.spans(s) && !tester.spans(c)) {
            report.witness = s;
            report.subsets_covered = 2 * mask + 2;
            return report;
        }
    }
    report.holds = true;
    report.subsets_covered = 2 * masks;
    return report;
}

ComplementReport complement_property_sampled(const FrameSystem& fs, std::uint64_t samples, Rng& rng) {
    const MatrixXc v = unit_columns(fs);
    SpanTester tester(v, fs.dimension());
    ComplementReport report;
    std::bernoulli_distribution coin(0.5);
    std::vector<int> s, c;
    for (std::uint64_t t = 0; t < samples; ++t) {
        s.clear();
        c.clear();
        for (std::size_t i = 0; i < fs.size(); ++i) (coin(rng) ? s : c).push_back(static_cast<int>(i));
        ++report.subsets_covered;
        if (!tester.spans(s) && !tester.spans(c)) {
            report.witness = s;
            return report;
        }
    }
    report.holds = true;
    return report;
}

std::array<ComplexVector, 2> confusable_pair(const FrameSystem& fs, const std::vector<int>& witness) {
    const MatrixXc all = fs.synthesis();
    if (all.imag().cwiseAbs().maxCoeff() > 0.0) throw ValidationError("confusable_pair: frame must be real");
    const Eigen::MatrixXd real = all.real();
    std::vector<char> in_s(fs.size(), 0);
    for (int i : witness) {
        if (i < 0 || static_cast<std::size_t>(i) >= fs.size()) throw ValidationError("confusable_pair: bad witness");
        in_s[static_cast<std::size_t>(i)] = 1;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(real, Eigen::ComputeFullU);
    const Eigen::MatrixXd w = svd.matrixU().leftCols(fs.dimension());
    // A vector of span(all) orthogonal to every frame vector selected by `mask`.
    auto orthogonal_to = [&](bool member) -> Eigen::VectorXd {
        std::vector<Eigen::Index> cols;
        for (std::size_t i = 0; i < fs.size(); ++i)
            if (static_cast<bool>(in_s[i]) == member) cols.push_back(static_cast<Eigen::Index>(i));
        if (cols.empty()) return w.col(0);
        Eigen::MatrixXd coords(static_cast<Eigen::Index>(cols.size()), w.cols());
        for (std::size_t r = 0; r < cols.size(); ++r)
            coords.row(static_cast<Eigen::Index>(r)) = (w.transpose() * real.col(cols[r])).transpose();
        Eigen::JacobiSVD<Eigen::MatrixXd> inner(coords, Eigen::ComputeFullV);
        if (numerical_rank(coords.cast<Complex>(), kRankTolerance) == w.cols())
            throw ValidationError("confusable_pair: witness subset spans the space");
        return w * inner.matrixV().col(w.cols() - 1);
    };
    const Eigen::VectorXd u = orthogonal_to(false);  // invisible to the complement
    const Eigen::VectorXd v = orthogonal_to(true);   // invisible to S
    const Eigen::VectorXd f = u + v;
    const Eigen::VectorXd g = u - v;
    return {ComplexVector(fs.index(), f.cast<Complex>()), ComplexVector(fs.index(), g.cast<Complex>())};
}

bool full_spark(const FrameSystem& fs) {
    const int n = static_cast<int>(fs.size());
    const int d = fs.dimension();
    if (n < d) return false;
    double count = 1.0;
    for (int i = 0; i < d; ++i) count = count * (n - i) / (i + 1);
    if (count > static_cast<double>(kMaxSparkSubsets))
        throw ValidationError("full_spark: " + std::to_string(static_cast<long long>(count)) +
                              " subsets exceed the enumeration limit");
    const MatrixXc all = unit_columns(fs);
    std::vector<int> pick(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) pick[static_cast<std::size_t>(i)] = i;
    MatrixXc sub(all.rows(), d);
    while (true) {
        for (int i = 0; i < d; ++i) sub.col(i) = all.col(pick[static_cast<std::size_t>(i)]);
        if (numerical_rank(sub, kRankTolerance) < d) return false;
        int i = d - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - d + i) --i;
        if (i < 0) return true;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < d; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
}

// ---------------------------------------------------------------- conjugate phase retrieval

std::vector<Complex> difference_coefficients(const ComplexVector& f, int k0, int l0,
                                             const std::vector<Permutation>& group) {
    const int n = static_cast<int>(f.size());
    require_index(f, IndexSet::range(0, n - 1), "difference_coefficients");
    if (k0 == l0 || k0 < 0 || l0 < 0 || k0 >= n || l0 >= n)
        throw ValidationError("difference_coefficients: need distinct k0, l0 in {0..n-1}");
    for (const auto& h : group)
        if (static_cast<int>(h.size()) != n) throw ValidationError("difference_coefficients: group acts on wrong set");
    if (!is_t_transitive(group, 2)) throw ValidationError("difference_coefficients: group is not doubly transitive");
    std::vector<Complex> out;
    out.reserve(group.size());
    for (const auto& h : group)
        out.push_back(f(h[static_cast<std::size_t>(k0)]) - f(h[static_cast<std::size_t>(l0)]));
    return out;
}

Eigen::MatrixXd pairwise_moduli(const std::vector<Complex>& coefficients, int k0, int l0,
                                const std::vector<Permutation>& group) {
    if (coefficients.size() != group.size() || group.empty())
        throw ValidationError("pairwise_moduli: one coefficient per group element required");
    const int n = static_cast<int>(group.front().size());
    Eigen::MatrixXd d = Eigen::MatrixXd::Constant(n, n, -1.0);
    for (int i = 0; i < n; ++i) d(i, i) = 0.0;
    for (std::size_t t = 0; t < group.size(); ++t) {
        const int i = group[t][static_cast<std::size_t>(k0)];
        const int j = group[t][static_cast<std::size_t>(l0)];
        d(i, j) = d(j, i) = std::abs(coefficients[t]);
    }
    if (d.minCoeff() < 0.0) throw ValidationError("pairwise_moduli: some pair of points is never compared");
    return d;
}

Eigen::MatrixXd pairwise_moduli(const ComplexVector& f) {
    const int n = static_cast<int>(f.size());
    Eigen::MatrixXd d(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d(i, j) = std::abs(f.values()(i) - f.values()(j));
    return d;
}

VectorXc canonical_conjugate_representative(const VectorXc& v) {
    if (v.size() == 0) return v;
    const double top = v.cwiseAbs().maxCoeff();
    if (top == 0.0) return v;
    Eigen::Index first = 0;
    while (std::abs(v(first)) < (1.0 - 1e-9) * top) ++first;
    VectorXc out = v * (std::conj(v(first)) / std::abs(v(first)));
    out(first) = std::abs(v(first));
    double second_mod = -1.0;
    Eigen::Index second = -1;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (i == first) continue;
        if (std::abs(out(i)) > (1.0 + 1e-9) * second_mod) {
            second_mod = std::abs(out(i));
            second = i;
        }
    }
    if (second >= 0 && out(second).imag() < 0.0) out = out.conjugate();
    return out;
}

double conjugate_phase_distance(const VectorXc& u, const VectorXc& v) {
    return std::min(phase_distance(u, v), phase_distance(u, VectorXc(v.conjugate())));
}

ComplexVector conjugate_phase_reconstruct(const Eigen::MatrixXd& moduli) {
    const Eigen::Index n = moduli.rows();
    if (moduli.cols() != n) throw ValidationError("conjugate_phase_reconstruct: moduli must be square");
    if (n < 3) throw ValidationError("conjugate_phase_reconstruct: need n >= 3");
    if (!moduli.allFinite() || moduli.minCoeff() < 0.0)
        throw ValidationError("conjugate_phase_reconstruct: moduli must be finite and nonnegative");
    const double scale = moduli.maxCoeff();
    if ((moduli - moduli.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0) ||
        moduli.diagonal().cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0))
        throw ValidationError("conjugate_phase_reconstruct: moduli must be symmetric with zero diagonal");
    const auto index = IndexSet::range(0, static_cast<int>(n) - 1);
    if (scale == 0.0) return ComplexVector(index);

    const Eigen::MatrixXd sq = moduli.cwiseProduct(moduli);
    const Eigen::MatrixXd j =
        Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
    const Eigen::MatrixXd gram = -0.5 * j * sq * j;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
    const double trace = gram.trace();
    if (lambda(0) < -kEmbeddingTolerance * trace)
        throw NumericalError("inconsistent moduli: distance data is not Euclidean");
    const double extra = lambda.head(n - 2).cwiseMax(0.0).sum();
    if (extra > kEmbeddingTolerance * trace)
        throw NumericalError("inconsistent moduli: distance data is not planar");
    const Eigen::VectorXd x = std::sqrt(std::max(lambda(n - 1), 0.0)) * eig.eigenvectors().col(n - 1);
    const Eigen::VectorXd y = std::sqrt(std::max(lambda(n - 2), 0.0)) * eig.eigenvectors().col(n - 2);
    VectorXc g(n);
    for (Eigen::Index i = 0; i < n; ++i) g(i) = Complex(x(i), y(i));
    g.array() -= g.mean();
    return {index, canonical_conjugate_representative(g)};
}

// ---------------------------------------------------------------- n = 3 counterexamples

CounterexampleReport verify_counterexample_n3() {
    CounterexampleReport r;
    const Complex xi(-0.5, std::sqrt(3.0) / 2.0);
    VectorXc y(3);
    y << 1.0, xi, std::conj(xi);
    const VectorXc z = 2.0 * y;
    const double side = std::abs(1.0 - xi);
    const double a = 2.0 * side;
    const double b = side;
    const double root3 = std::sqrt(3.0);

    r.y_sum = std::abs(y.sum());
    r.z_sum = std::abs(z.sum());
    for (int l = 0; l < 3; ++l)
        for (int k = 0; k < 3; ++k) {
            if (l == k) continue;
            const Complex dy = y(l) - y(k);
            const Complex dz = z(l) - z(k);
            r.identity_modulus_residual =
                std::max(r.identity_modulus_residual, std::abs(std::norm(dy) + a * a - std::norm(dz) - b * b));
            r.identity_real_residual = std::max(r.identity_real_residual, std::abs(a * dy.real() - b * dz.real()));
        }

    const auto index = IndexSet::range(0, 2);
    VectorXc psi1 = VectorXc::Constant(3, 1.0 / root3);
    psi1(0) += 1.0;
    psi1(1) -= 1.0;
    const ComplexVector psi(index, psi1);
    const VectorXc f1 = y + VectorXc::Constant(3, a / root3);
    const VectorXc g1 = z + VectorXc::Constant(3, b / root3);
    const VectorXc ones = VectorXc::Ones(3);
    const double c = std::abs(psi1.dot(y)) / std::abs(psi1.dot(ones));
    r.constant_scaling = c;
    for (const auto& h : symmetric_group(3)) {
        const VectorXc v = permute(h, psi).values();
        r.coefficient_residual = std::max(r.coefficient_residual, std::abs(std::abs(v.dot(f1)) - std::abs(v.dot(g1))));
        r.constant_residual = std::max(r.constant_residual, std::abs(std::abs(v.dot(y)) - c * std::abs(v.dot(ones))));
        r.constant_residual = std::max(r.constant_residual, std::abs(std::abs(v.dot(y)) - side));
    }
    r.distance_plain = phase_distance(f1, g1);
    r.distance_conjugate = phase_distance(f1, VectorXc(g1.conjugate()));
    r.non_equivalent = r.distance_plain > 1e-6 && r.distance_conjugate > 1e-6;
    r.displayed_constant = side / root3;
    r.text_constant = side / 3.0;
    const bool displayed = std::abs(c - r.displayed_constant) <= 1e-12;
    const bool text = std::abs(c - r.text_constant) <= 1e-12;
    r.matching_constant = displayed ? (text ? "both" : "displayed") : (text ? "text" : "neither");
    r.constant_inner_product = std::abs(ones.dot(y));

    if (r.y_sum != 0.0 || r.z_sum != 0.0) r.failures.push_back("zero sums");
    if (r.identity_modulus_residual > 1e-12 || r.identity_real_residual > 1e-12)
        r.failures.push_back("difference identities");
    if (r.coefficient_residual > 1e-12) r.failures.push_back("coefficient moduli");
    if (!r.non_equivalent) r.failures.push_back("non-equivalence");
    if (r.constant_residual > 1e-12) r.failures.push_back("constant-vector moduli");
    if (r.matching_constant == "neither") r.failures.push_back("constant scaling");
    return r;
}

// ---------------------------------------------------------------- stitching

PatchData exact_patch(const ComplexVector& f, const std::array<int, 3>& support) {
    VectorXc local(3);
    for (int i = 0; i < 3; ++i) local(i) = f(support[static_cast<std::size_t>(i)]);
    local.array() -= local.mean();
    return {support, ComplexVector(IndexSet({support[0], support[1], support[2]}), local)};
}

std::vector<std::array<int, 3>> three_subsets(int n) {
    std::vector<std::array<int, 3>> out;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) out.push_back({a, b, c});
    return out;
}

ComplexVector phase_propagation_stitch(const std::vector<PatchData>& patches, int n, std::size_t reference) {
    if (n < 3) throw ValidationError("phase_propagation_stitch: need n >= 3");
    if (patches.empty()) throw ValidationError("phase_propagation_stitch: no patches");
    if (reference >= patches.size()) throw ValidationError("phase_propagation_stitch: reference out of range");
    const std::size_t count = patches.size();
    std::vector<std::array<Complex, 3>> vals(count);
    double scale = 0.0;
    for (std::size_t p = 0; p < count; ++p) {
        const auto& s = patches[p].support;
        if (!(0 <= s[0] && s[0] < s[1] && s[1] < s[2] && s[2] < n))
            throw ValidationError("phase_propagation_stitch: support must be ascending within {0..n-1}");
        require_index(patches[p].local_vector, IndexSet({s[0], s[1], s[2]}), "phase_propagation_stitch");
        for (int i = 0; i < 3; ++i) vals[p][static_cast<std::size_t>(i)] = patches[p].local_vector.values()(i);
        scale = std::max(scale, patches[p].local_vector.norm());
    }
    const auto out_index = IndexSet::range(0, n - 1);
    if (scale == 0.0) return ComplexVector(out_index);
    const double tol = kStitchTolerance * scale;

    auto position = [&](std::size_t p, int label) {
        const auto& s = patches[p].support;
        for (int i = 0; i < 3; ++i)
            if (s[static_cast<std::size_t>(i)] == label) return i;
        return -1;
    };
    auto diff = [&](std::size_t p, int i, int j) {
        return vals[p][static_cast<std::size_t>(position(p, i))] - vals[p][static_cast<std::size_t>(position(p, j))];
    };

    std::vector<char> nonzero(count), aligned(count, 0);
    for (std::size_t p = 0; p < count; ++p) {
        nonzero[p] = patches[p].local_vector.norm() > tol;
        if (!nonzero[p]) aligned[p] = 1;
    }
    const std::size_t ref =
        nonzero[reference] ? reference
                           : static_cast<std::size_t>(std::find(nonzero.begin(), nonzero.end(), 1) - nonzero.begin());
    aligned[ref] = 1;
    std::queue<std::size_t> queue;
    queue.push(ref);
    while (!queue.empty()) {
        const std::size_t p = queue.front();
        queue.pop();
        for (std::size_t q = 0; q < count; ++q) {
            if (aligned[q]) continue;
            std::vector<int> shared;
            for (int label : patches[q].support)
                if (position(p, label) >= 0) shared.push_back(label);
            if (shared.size() < 2) continue;
            Complex inner = 0.0;
            double np = 0.0, nq = 0.0;
            for (std::size_t a = 0; a < shared.size(); ++a)
                for (std::size_t b = a + 1; b < shared.size(); ++b) {
                    const Complex dp = diff(p, shared[a], shared[b]);
                    const Complex dq = diff(q, shared[a], shared[b]);
                    inner += std::conj(dq) * dp;
                    np += std::norm(dp);
                    nq += std::norm(dq);
                }
            if (std::sqrt(np) <= tol || std::sqrt(nq) <= tol || std::abs(inner) == 0.0) continue;
            const Complex beta = inner / std::abs(inner);
            for (auto& v : vals[q]) v *= beta;
            aligned[q] = 1;
            queue.push(q);
        }
    }
    for (std::size_t p = 0; p < count; ++p)
        if (!aligned[p])
            throw ValidationError("phase_propagation_stitch: patches are disconnected; patch " +
                                  subset_name(patches[p].support) + " cannot be aligned");

    MatrixXc dtab = MatrixXc::Zero(n, n);
    std::vector<std::size_t> source(static_cast<std::size_t>(n * n), count);
    for (std::size_t p = 0; p < count; ++p) {
        const auto& s = patches[p].support;
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
                const int i = s[static_cast<std::size_t>(a)];
                const int j = s[static_cast<std::size_t>(b)];
                const Complex d = diff(p, i, j);
                auto& src = source[static_cast<std::size_t>(i * n + j)];
                if (src == count) {
                    src = p;
                    dtab(i, j) = d;
                    dtab(j, i) = -d;
                } else if (std::abs(dtab(i, j) - d) > tol) {
                    throw NumericalError("phase_propagation_stitch: inconsistent patches " +
                                         subset_name(patches[src].support) + " and " + subset_name(s) +
                                         " on pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
                }
            }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (source[static_cast<std::size_t>(i * n + j)] == count)
                throw ValidationError("phase_propagation_stitch: patches do not cover pair (" + std::to_string(i) +
                                      "," + std::to_string(j) + ")");
    VectorXc g = dtab.rowwise().sum() / static_cast<double>(n);
    return {out_index, g};
}

// ---------------------------------------------------------------- 3-transitive phase retrieval

std::vector<double> permutation_moduli(const ComplexVector& f, const std::vector<Permutation>& group,
                                       const ComplexVector& psi) {
    std::vector<double> out;
    out.reserve(group.size());
    for (const auto& h : group) out.push_back(std::abs(permute(h, psi).values().dot(f.values())));
    return out;
}

namespace {

// Levenberg-Marquardt on |<u, v_s>|^2 = target_s over u in the zero-sum plane of C^3.
VectorXc gauss_newton_local(const std::vector<VectorXc>& frame, const Eigen::VectorXd& target,
                            const ThreeTransitiveOptions& options, std::uint64_t seed, const std::string& name) {
    MatrixXc basis(3, 2);
    basis.col(0) << 1.0, -1.0, 0.0;
    basis.col(1) << 1.0, 1.0, -2.0;
    basis.col(0) /= std::sqrt(2.0);
    basis.col(1) /= std::sqrt(6.0);
    const std::size_t m = frame.size();
    MatrixXc w(static_cast<Eigen::Index>(m), 2);  // c_s = x1 w(s,0) + x2 w(s,1)
    double frame_norm = 0.0;
    for (std::size_t s = 0; s < m; ++s) {
        w(static_cast<Eigen::Index>(s), 0) = frame[s].dot(basis.col(0));
        w(static_cast<Eigen::Index>(s), 1) = frame[s].dot(basis.col(1));
        frame_norm = std::max(frame_norm, frame[s].squaredNorm());
    }
    const double goal = options.residual_tolerance * target.norm();

    auto residual = [&](const Eigen::Vector4d& t, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
        const Complex x1(t(0), t(1)), x2(t(2), t(3));
        r.resize(static_cast<Eigen::Index>(m));
        if (jac) jac->resize(static_cast<Eigen::Index>(m), 4);
        for (Eigen::Index s = 0; s < static_cast<Eigen::Index>(m); ++s) {
            const Complex c = x1 * w(s, 0) + x2 * w(s, 1);
            r(s) = std::norm(c) - target(s);
            if (jac) {
                const Complex g1 = std::conj(c) * w(s, 0);
                const Complex g2 = std::conj(c) * w(s, 1);
                (*jac)(s, 0) = 2.0 * g1.real();
                (*jac)(s, 1) = -2.0 * g1.imag();
                (*jac)(s, 2) = 2.0 * g2.real();
                (*jac)(s, 3) = -2.0 * g2.imag();
            }
        }
    };

    Rng rng(seed);
    std::normal_distribution<double> normal;
    const double radius = std::sqrt(target.cwiseAbs().maxCoeff() / std::max(frame_norm, 1e-300));
    double best_cost = std::numeric_limits<double>::infinity();
    Eigen::Vector4d best = Eigen::Vector4d::Zero();
    Eigen::VectorXd r, r_new;
    Eigen::MatrixXd jac;
    for (int start = 0; start < options.starts; ++start) {
        Eigen::Vector4d t;
        for (int i = 0; i < 4; ++i) t(i) = radius * normal(rng);
        double lambda = 1e-3;
        residual(t, r, &jac);
        double cost = r.norm();
        for (int iter = 0; iter < 500 && cost > goal; ++iter) {
            const Eigen::Matrix4d jtj = jac.transpose() * jac;
            const Eigen::Vector4d jtr = jac.transpose() * r;
            Eigen::Matrix4d damped = jtj;
            damped.diagonal().array() += lambda * (jtj.diagonal().array() + 1e-12);
            const Eigen::Vector4d step = damped.ldlt().solve(-jtr);
            const Eigen::Vector4d trial = t + step;
            residual(trial, r_new, nullptr);
            if (r_new.norm() < cost) {
                t = trial;
                residual(t, r, &jac);
                cost = r.norm();
                lambda = std::max(lambda / 3.0, 1e-12);
            } else {
                lambda *= 3.0;
                if (lambda > 1e12) break;
            }
        }
        if (cost < best_cost) {
            best_cost = cost;
            best = t;
        }
        if (best_cost <= goal) break;
    }
    if (!(best_cost <= goal))
        throw NumericalError("three_transitive_phase_retrieval: local solver did not converge on patch " + name);
    return Complex(best(0), best(1)) * basis.col(0) + Complex(best(2), best(3)) * basis.col(1);
}

}  // namespace

ComplexVector three_transitive_phase_retrieval(const std::vector<double>& moduli,
                                               const std::vector<Permutation>& group, const ComplexVector& psi0,
                                               const ThreeTransitiveOptions& options) {
    if (group.empty()) throw ValidationError("three_transitive_phase_retrieval: empty group");
    const int n = static_cast<int>(group.front().size());
    if (n < 3) throw ValidationError("three_transitive_phase_retrieval: need n >= 3");
    if (moduli.size() != group.size())
        throw ValidationError("three_transitive_phase_retrieval: one measurement per group element required");
    for (double m : moduli)
        if (!std::isfinite(m) || m < 0.0)
            throw ValidationError("three_transitive_phase_retrieval: moduli must be finite and nonnegative");
    if (!is_t_transitive(group, 3))
        throw ValidationError("three_transitive_phase_retrieval: group is not 3-fold transitive");
    require_index(psi0, IndexSet::range(0, 2), "three_transitive_phase_retrieval");
    if (psi0.norm() == 0.0) throw ValidationError("three_transitive_phase_retrieval: psi0 is zero");
    require_zero_sum(psi0, "three_transitive_phase_retrieval: psi0");

    const PrimeModulus p3(3);
    const auto s3 = enumerate(p3);
    std::vector<VectorXc> local_frame;
    for (const auto& x : s3) local_frame.push_back(pi_apply(x, psi0).values());

    std::unique_ptr<RecoveryPlan> plan;
    if (options.solver == LocalSolver::kLinear) {
        const auto phi = fourier_side_generator(psi0);
        if (!check_generator(phi).admissible)
            throw ValidationError("three_transitive_phase_retrieval: psi0 does not do phase retrieval for S(3)");
        plan = std::make_unique<RecoveryPlan>(phi);
    }

    std::unordered_map<long long, std::vector<std::size_t>> by_triple;
    for (std::size_t t = 0; t < group.size(); ++t) {
        const auto& h = group[t];
        by_triple[(static_cast<long long>(h[0]) * n + h[1]) * n + h[2]].push_back(t);
    }

    std::vector<PatchData> patches;
    const auto subsets = three_subsets(n);
    for (std::size_t a = 0; a < subsets.size(); ++a) {
        const auto& s = subsets[a];
        const std::string name = subset_name(s);
        std::vector<const std::vector<std::size_t>*> members;
        Eigen::VectorXd target(6);
        for (std::size_t e = 0; e < s3.size(); ++e) {
            const auto& x = s3[e];
            const long long key = (static_cast<long long>(s[static_cast<std::size_t>(act(x, 0))]) * n +
                                   s[static_cast<std::size_t>(act(x, 1))]) *
                                      n +
                                  s[static_cast<std::size_t>(act(x, 2))];
            const auto& hit = by_triple.at(key);
            members.push_back(&hit);
            const double m = moduli[hit.front()];
            target(static_cast<Eigen::Index>(e)) = m * m;
        }

        VectorXc u = VectorXc::Zero(3);
        if (target.norm() > 0.0) {
            if (plan) {
                GroupFunction local(p3, target.cast<Complex>());
                ComplexVector u_hat;
                try {
                    u_hat = extract_rank_one(plan->recover(local));
                } catch (const NumericalError& e) {
                    throw NumericalError("three_transitive_phase_retrieval: patch " + name + ": " + e.what());
                }
                VectorXc full(3);
                full << 0.0, u_hat.values()(0), u_hat.values()(1);
                u = idft(full);
            } else {
                u = gauss_newton_local(local_frame, target, options, options.seed + a, name);
            }
        }

        double misfit = 0.0;
        for (std::size_t e = 0; e < s3.size(); ++e) {
            const double predicted = std::norm(local_frame[e].dot(u));
            for (std::size_t t : *members[e]) {
                const double m = moduli[t];
                misfit = std::max(misfit, std::abs(predicted - m * m));
            }
        }
        if (misfit > options.residual_tolerance * target.norm())
            throw NumericalError("three_transitive_phase_retrieval: residual " + std::to_string(misfit) +
                                 " too large on patch " + name);
        patches.push_back({s, ComplexVector(IndexSet({s[0], s[1], s[2]}), u)});
    }
    const auto g = phase_propagation_stitch(patches, n);
    return {g.index(), normalize_phase(g.values())};
}

// ---------------------------------------------------------------- Pauli pairs and projections

bool PauliReport::all_equal() const {
    return std::all_of(time_moduli_equal.begin(), time_moduli_equal.end(), [](bool b) { return b; }) &&
           std::all_of(fourier_moduli_equal.begin(), fourier_moduli_equal.end(), [](bool b) { return b; });
}

GroupFunction time_coefficients(const ComplexVector& f, const ComplexVector& psi) {
    const int p = static_cast<int>(psi.size());
    if (p < 3 || !is_prime(p)) throw ValidationError("time_coefficients: psi must live on Z_p");
    require_index(f, psi.index(), "time_coefficients");
    const PrimeModulus mod(p);
    GroupFunction out(mod);
    for (const auto& x : enumerate(mod)) out[x] = pi_apply(x, psi).values().dot(f.values());
    return out;
}

PauliReport pauli_pair_family(const ComplexVector& f, const ComplexVector& g) {
    const int p = static_cast<int>(f.size());
    if (p < 3 || !is_prime(p)) throw ValidationError("pauli_pair_family: vectors must live on Z_p");
    require_index(g, f.index(), "pauli_pair_family");
    require_zero_sum(f, "pauli_pair_family: f");
    require_zero_sum(g, "pauli_pair_family: g");
    const PrimeModulus mod(p);
    const auto psi = canonical_time_generator(mod);
    const auto vf = time_coefficients(f, psi);
    const auto vg = time_coefficients(g, psi);
    const double tol = kPauliTolerance * std::max(f.norm(), g.norm()) * psi.norm();
    PauliReport r;
    r.p = p;
    for (int l = 1; l < p; ++l) {
        VectorXc fl(p), gl(p);
        for (int k = 0; k < p; ++k) {
            fl(k) = vf(k, l);
            gl(k) = vg(k, l);
        }
        const double dt = (fl.cwiseAbs() - gl.cwiseAbs()).cwiseAbs().maxCoeff();
        const double df = (dft(fl).cwiseAbs() - dft(gl).cwiseAbs()).cwiseAbs().maxCoeff();
        r.max_time_deviation = std::max(r.max_time_deviation, dt);
        r.max_fourier_deviation = std::max(r.max_fourier_deviation, df);
        r.time_moduli_equal.push_back(dt <= tol);
        r.fourier_moduli_equal.push_back(df <= tol);
    }
    return r;
}

ComplexVector frequency_deletion(const ComplexVector& f, int l) {
    const int p = static_cast<int>(f.size());
    require_index(f, IndexSet::range(0, p - 1), "frequency_deletion");
    if (l < 0 || l >= p) throw ValidationError("frequency_deletion: frequency out of range");
    auto f_hat = dft(f);
    f_hat(l) = 0.0;
    return idft(f_hat);
}

Eigen::MatrixXd projection_moduli(const ComplexVector& f) {
    const int p = static_cast<int>(f.size());
    if (p < 5 || !is_prime(p)) throw ValidationError("projection_moduli: need a prime p >= 5");
    require_index(f, IndexSet::range(0, p - 1), "projection_moduli");
    require_zero_sum(f, "projection_moduli: f");
    Eigen::MatrixXd m(p - 1, p);
    for (int l = 1; l < p; ++l) m.row(l - 1) = frequency_deletion(f, l).values().cwiseAbs().transpose();
    return m;
}

ComplexVector recover_from_projections(const Eigen::MatrixXd& moduli) {
    const int p = static_cast<int>(moduli.cols());
    if (p < 5 || !is_prime(p) || moduli.rows() != p - 1)
        throw ValidationError("recover_from_projections: expected a (p-1) x p table for a prime p >= 5");
    if (!moduli.allFinite() || moduli.minCoeff() < 0.0)
        throw ValidationError("recover_from_projections: moduli must be finite and nonnegative");
    const PrimeModulus mod(p);
    // V_psi f(., l) = P_{l^{-1}} f.
    GroupFunction meas(mod);
    for (int l = 1; l < p; ++l) {
        const int row = mod_inverse(l, mod) - 1;
        for (int k = 0; k < p; ++k) meas(k, l) = moduli(row, k) * moduli(row, k);
    }
    const auto phi = fourier_side_generator(canonical_time_generator(mod));
    const auto f_hat0 = recover_vector(meas, phi);
    VectorXc f_hat(p);
    f_hat(0) = 0.0;
    f_hat.tail(p - 1) = f_hat0.values();
    return {IndexSet::range(0, p - 1), normalize_phase(idft(f_hat))};
}

ComplexVector projection_phase_retrieval(const ComplexVector& f) {
    return recover_from_projections(projection_moduli(f));
}

}  // namespace affpr
