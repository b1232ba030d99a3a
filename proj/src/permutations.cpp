#include "affpr/permutations.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "affpr/errors.hpp"

namespace affpr {

namespace {

int group_degree(const std::vector<Permutation>& group) {
    if (group.empty()) throw ValidationError("permutation group is empty");
    const auto n = group.front().size();
    for (const auto& h : group)
        if (h.size() != n || !is_permutation(h)) throw ValidationError("group entries must be permutations of one set");
    return static_cast<int>(n);
}

}  // namespace

bool is_permutation(const Permutation& h) {
    std::vector<char> seen(h.size(), 0);
    for (int v : h) {
        if (v < 0 || static_cast<std::size_t>(v) >= h.size() || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw ValidationError("compose: permutations of different sizes");
    Permutation out(a.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[static_cast<std::size_t>(b[i])];
    return out;
}

Permutation invert(const Permutation& h) {
    Permutation out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) out[static_cast<std::size_t>(h[i])] = static_cast<int>(i);
    return out;
}

std::vector<Permutation> symmetric_group(int n) {
    if (n < 1) throw ValidationError("symmetric_group: n must be positive");
    Permutation h(static_cast<std::size_t>(n));
    std::iota(h.begin(), h.end(), 0);
    std::vector<Permutation> out;
    do out.push_back(h);
    while (std::next_permutation(h.begin(), h.end()));
    return out;
}

std::vector<Permutation> generated_group(const std::vector<Permutation>& generators) {
    const int n = group_degree(generators);
    Permutation id(static_cast<std::size_t>(n));
    std::iota(id.begin(), id.end(), 0);
    std::set<Permutation> seen{id};
    std::vector<Permutation> frontier{id};
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& h : frontier)
            for (const auto& g : generators) {
                auto gh = compose(g, h);
                if (seen.insert(gh).second) next.push_back(std::move(gh));
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

std::vector<Permutation> affine_permutations(const PrimeModulus& p) {
    std::vector<Permutation> out;
    for (int l = 1; l < p.value(); ++l)
        for (int k = 0; k < p.value(); ++k) {
            Permutation h(static_cast<std::size_t>(p.value()));
            for (int m = 0; m < p.value(); ++m) h[static_cast<std::size_t>(m)] = p.reduce(k + static_cast<long long>(l) * m);
            out.push_back(std::move(h));
        }
    return out;
}

std::vector<Permutation> projective_linear_group(const PrimeModulus& q) {
    const int n = q.value();
    const int inf = n;
    Permutation shift(static_cast<std::size_t>(n + 1)), scale(shift.size()), flip(shift.size());
    const int g = primitive_root(q);
    for (int x = 0; x < n; ++x) {
        shift[static_cast<std::size_t>(x)] = q.reduce(x + 1);
        scale[static_cast<std::size_t>(x)] = q.reduce(static_cast<long long>(g) * x);
        flip[static_cast<std::size_t>(x)] = x == 0 ? inf : q.reduce(-mod_inverse(x, q));
    }
    shift[static_cast<std::size_t>(inf)] = inf;
    scale[static_cast<std::size_t>(inf)] = inf;
    flip[static_cast<std::size_t>(inf)] = 0;
    return generated_group({shift, scale, flip});
}

bool is_t_transitive(const std::vector<Permutation>& group, int t) {
    const int n = group_degree(group);
    if (t < 1 || t > n) throw ValidationError("is_t_transitive: t must lie in 1..n");
    // Orbit of the tuple (0, 1, ..., t-1): encode image tuples in base n.
    std::set<long long> images;
    for (const auto& h : group) {
        long long code = 0;
        for (int i = 0; i < t; ++i) code = code * n + h[static_cast<std::size_t>(i)];
        images.insert(code);
    }
    long long tuples = 1;
    for (int i = 0; i < t; ++i) tuples *= n - i;
    return static_cast<long long>(images.size()) == tuples;
}

ComplexVector permute(const Permutation& h, const ComplexVector& f) {
    const int n = static_cast<int>(h.size());
    require_index(f, IndexSet::range(0, n - 1), "permute");
    ComplexVector out(f.index());
    for (int i = 0; i < n; ++i) out.values()(h[static_cast<std::size_t>(i)]) = f.values()(i);
    return out;
}

}  // namespace affpr
