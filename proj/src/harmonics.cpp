#include "affpr/harmonics.hpp"

#include <cmath>
#include <numbers>

#include "affpr/errors.hpp"

namespace affpr {

namespace {

void require_cyclic(const ComplexVector& f, const char* what) {
    require_index(f, IndexSet::range(0, static_cast<int>(f.size()) - 1), what);
    if (f.size() == 0) throw ValidationError(std::string(what) + ": empty vector");
}

VectorXc transform(const VectorXc& f, int sign) {
    const int n = static_cast<int>(f.size());
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    VectorXc out(n);
    for (int m = 0; m < n; ++m) {
        Complex acc = 0.0;
        for (int k = 0; k < n; ++k) acc += f(k) * unit_root(static_cast<long long>(sign) * k * m, n);
        out(m) = scale * acc;
    }
    return out;
}

}  // namespace

Complex unit_root(long long t, int n) {
    long long r = t % n;
    if (r < 0) r += n;
    return std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(r) / n);
}

VectorXc dft(const VectorXc& f) { return transform(f, 1); }
VectorXc idft(const VectorXc& f_hat) { return transform(f_hat, -1); }

ComplexVector dft(const ComplexVector& f) {
    require_cyclic(f, "dft");
    return {f.index(), dft(f.values())};
}

ComplexVector idft(const ComplexVector& f_hat) {
    require_cyclic(f_hat, "idft");
    return {f_hat.index(), idft(f_hat.values())};
}

ComplexVector convolve(const ComplexVector& f, const ComplexVector& g) {
    require_cyclic(f, "convolve");
    require_cyclic(g, "convolve");
    if (f.size() != g.size()) throw ValidationError("convolve: mismatched group order");
    const int n = static_cast<int>(f.size());
    ComplexVector out(f.index());
    for (int m = 0; m < n; ++m) {
        Complex acc = 0.0;
        for (int k = 0; k < n; ++k) acc += f.values()(k) * g.values()(((m - k) % n + n) % n);
        out.values()(m) = acc;
    }
    return out;
}

MatrixXc dft_matrix(int n) {
    if (n < 1) throw ValidationError("dft_matrix: n must be positive");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    MatrixXc u(n, n);
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) u(m, k) = scale * unit_root(static_cast<long long>(k) * m, n);
    return u;
}

ComplexVector delta(int n, int k) {
    ComplexVector d(IndexSet::range(0, n - 1));
    d(k) = 1.0;
    return d;
}

ComplexVector ones(int n) {
    return {IndexSet::range(0, n - 1), VectorXc::Ones(n)};
}

}  // namespace affpr
