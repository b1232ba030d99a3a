#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace affpr {

using Complex = std::complex<double>;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

/// Ordered list of integer labels with O(1) label -> position lookup.
///
/// Labels need not start at zero; {1..p-1} and {2..p-1} are the common cases.
class IndexSet {
public:
    IndexSet() = default;
    explicit IndexSet(std::vector<int> labels);

    /// Contiguous labels first, first+1, ..., last (empty if last < first).
    static IndexSet range(int first, int last);

    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }
    int label(std::size_t position) const { return labels_[position]; }
    const std::vector<int>& labels() const { return labels_; }

    bool contains(int label) const;
    /// Position of a label; throws ValidationError if absent.
    std::size_t position(int label) const;

    bool operator==(const IndexSet& other) const { return labels_ == other.labels_; }

private:
    std::vector<int> labels_;
    int min_label_ = 0;
    std::vector<int> lookup_;  // position + 1, or 0 if the label is absent
};

/// Complex vector indexed by an IndexSet.
class ComplexVector {
public:
    ComplexVector() = default;
    explicit ComplexVector(IndexSet index);
    ComplexVector(IndexSet index, VectorXc values);

    const IndexSet& index() const { return index_; }
    std::size_t size() const { return index_.size(); }

    Complex& operator()(int label) { return values_(static_cast<Eigen::Index>(index_.position(label))); }
    Complex operator()(int label) const { return values_(static_cast<Eigen::Index>(index_.position(label))); }

    VectorXc& values() { return values_; }
    const VectorXc& values() const { return values_; }

    double norm() const { return values_.norm(); }

private:
    IndexSet index_;
    VectorXc values_;
};

/// Complex matrix with labelled rows and columns.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(IndexSet rows, IndexSet cols);
    ComplexMatrix(IndexSet rows, IndexSet cols, MatrixXc values);

    const IndexSet& rows() const { return rows_; }
    const IndexSet& cols() const { return cols_; }

    Complex& operator()(int row, int col) {
        return values_(static_cast<Eigen::Index>(rows_.position(row)),
                       static_cast<Eigen::Index>(cols_.position(col)));
    }
    Complex operator()(int row, int col) const {
        return values_(static_cast<Eigen::Index>(rows_.position(row)),
                       static_cast<Eigen::Index>(cols_.position(col)));
    }

    MatrixXc& values() { return values_; }
    const MatrixXc& values() const { return values_; }

    double norm() const { return values_.norm(); }

private:
    IndexSet rows_;
    IndexSet cols_;
    MatrixXc values_;
};

/// Throws ValidationError unless the vector is indexed by `expected`.
void require_index(const ComplexVector& v, const IndexSet& expected, const char* what);
/// Throws ValidationError unless the matrix has the expected row/column labels.
void require_index(const ComplexMatrix& a, const IndexSet& rows, const IndexSet& cols, const char* what);

/// min over unit scalars alpha of ||u - alpha v||.
double phase_distance(const VectorXc& u, const VectorXc& v);
double phase_distance(const ComplexVector& u, const ComplexVector& v);

/// Rank by singular values: sigma > rel_tol * sigma_max.
int numerical_rank(const MatrixXc& m, double rel_tol = 1e-10);

/// Moore-Penrose pseudo-inverse via SVD with the same relative threshold.
MatrixXc pseudo_inverse(const MatrixXc& m, double rel_tol = 1e-10);

}  // namespace affpr
