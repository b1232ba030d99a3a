#include "affpr/types.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "affpr/errors.hpp"

namespace affpr {

IndexSet::IndexSet(std::vector<int> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) return;
    const auto [lo, hi] = std::minmax_element(labels_.begin(), labels_.end());
    min_label_ = *lo;
    lookup_.assign(static_cast<std::size_t>(*hi - *lo + 1), 0);
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        int& slot = lookup_[static_cast<std::size_t>(labels_[i] - min_label_)];
        if (slot != 0) throw ValidationError("duplicate label " + std::to_string(labels_[i]));
        slot = static_cast<int>(i) + 1;
    }
}

IndexSet IndexSet::range(int first, int last) {
    std::vector<int> labels;
    if (last >= first) {
        labels.resize(static_cast<std::size_t>(last - first + 1));
        std::iota(labels.begin(), labels.end(), first);
    }
    return IndexSet(std::move(labels));
}

bool IndexSet::contains(int label) const {
    const long offset = static_cast<long>(label) - min_label_;
    return offset >= 0 && offset < static_cast<long>(lookup_.size()) &&
           lookup_[static_cast<std::size_t>(offset)] != 0;
}

std::size_t IndexSet::position(int label) const {
    if (!contains(label)) throw ValidationError("label " + std::to_string(label) + " not in index set");
    return static_cast<std::size_t>(lookup_[static_cast<std::size_t>(label - min_label_)] - 1);
}

ComplexVector::ComplexVector(IndexSet index)
    : index_(std::move(index)), values_(VectorXc::Zero(static_cast<Eigen::Index>(index_.size()))) {}

ComplexVector::ComplexVector(IndexSet index, VectorXc values)
    : index_(std::move(index)), values_(std::move(values)) {
    if (static_cast<std::size_t>(values_.size()) != index_.size())
        throw ValidationError("vector length does not match index set");
}

ComplexMatrix::ComplexMatrix(IndexSet rows, IndexSet cols)
    : rows_(std::move(rows)),
      cols_(std::move(cols)),
      values_(MatrixXc::Zero(static_cast<Eigen::Index>(rows_.size()), static_cast<Eigen::Index>(cols_.size()))) {}

ComplexMatrix::ComplexMatrix(IndexSet rows, IndexSet cols, MatrixXc values)
    : rows_(std::move(rows)), cols_(std::move(cols)), values_(std::move(values)) {
    if (static_cast<std::size_t>(values_.rows()) != rows_.size() ||
        static_cast<std::size_t>(values_.cols()) != cols_.size())
        throw ValidationError("matrix shape does not match index sets");
}

void require_index(const ComplexVector& v, const IndexSet& expected, const char* what) {
    if (!(v.index() == expected)) throw ValidationError(std::string(what) + ": wrong index set");
}

void require_index(const ComplexMatrix& a, const IndexSet& rows, const IndexSet& cols, const char* what) {
    if (!(a.rows() == rows) || !(a.cols() == cols))
        throw ValidationError(std::string(what) + ": dimension mismatch");
}

double phase_distance(const VectorXc& u, const VectorXc& v) {
    if (u.size() != v.size()) throw ValidationError("phase_distance: length mismatch");
    const Complex inner = v.dot(u);  // conj(v)^T u
    const double mag = std::abs(inner);
    const Complex alpha = mag > 0.0 ? inner / mag : Complex(1.0, 0.0);
    return (u - alpha * v).norm();
}

double phase_distance(const ComplexVector& u, const ComplexVector& v) {
    if (!(u.index() == v.index())) throw ValidationError("phase_distance: index sets differ");
    return phase_distance(u.values(), v.values());
}

int numerical_rank(const MatrixXc& m, double rel_tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<MatrixXc> svd(m);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) ++rank;
    return rank;
}

MatrixXc pseudo_inverse(const MatrixXc& m, double rel_tol) {
    Eigen::JacobiSVD<MatrixXc> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(0) > 0.0 && s(i) > rel_tol * s(0)) inv(i) = 1.0 / s(i);
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

}  // namespace affpr
