#include "json_io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "affpr/errors.hpp"

namespace affpr::io {

namespace {

const Json& field(const Json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key))
        throw ValidationError(std::string(what) + ": missing field \"" + key + "\"");
    return j.at(key);
}

double finite_number(const Json& j, const char* what) {
    if (!j.is_number()) throw ValidationError(std::string(what) + ": expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw ValidationError(std::string(what) + ": non-finite value");
    return x;
}

int integer(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw ValidationError(std::string(what) + ": expected an integer");
    return j.get<int>();
}

IndexSet labels_from_json(const Json& j, const char* what) {
    if (!j.is_array()) throw ValidationError(std::string(what) + ": labels must be an array");
    std::vector<int> labels;
    for (const auto& x : j) labels.push_back(integer(x, what));
    return IndexSet(std::move(labels));
}

Json labels_to_json(const IndexSet& idx) { return Json(idx.labels()); }

VectorXc complex_array(const Json& j, const char* what) {
    if (!j.is_array()) throw ValidationError(std::string(what) + ": values must be an array");
    VectorXc out(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) out(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], what);
    return out;
}

Json complex_array_to_json(const VectorXc& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
    return out;
}

void require_order(const Json& j, const char* expected, const char* what) {
    const Json& order = field(j, "order", what);
    if (!order.is_string() || order.get<std::string>() != expected)
        throw ValidationError(std::string(what) + ": order tag must be \"" + expected + "\"");
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const char* what) {
    if (j.is_number()) return {finite_number(j, what), 0.0};
    if (!j.is_array() || j.size() != 2) throw ValidationError(std::string(what) + ": complex values are [re, im]");
    return {finite_number(j[0], what), finite_number(j[1], what)};
}

Json to_json(const ComplexVector& v) {
    Json out;
    out["labels"] = labels_to_json(v.index());
    out["values"] = complex_array_to_json(v.values());
    return out;
}

ComplexVector vector_from_json(const Json& j) {
    auto labels = labels_from_json(field(j, "labels", "vector"), "vector");
    VectorXc values = complex_array(field(j, "values", "vector"), "vector");
    if (static_cast<std::size_t>(values.size()) != labels.size())
        throw ValidationError("vector: " + std::to_string(values.size()) + " values for " +
                              std::to_string(labels.size()) + " labels");
    return {std::move(labels), std::move(values)};
}

Json to_json(const ComplexMatrix& a) {
    Json out;
    out["row_labels"] = labels_to_json(a.rows());
    out["col_labels"] = labels_to_json(a.cols());
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < a.values().rows(); ++r) rows.push_back(complex_array_to_json(a.values().row(r).transpose()));
    out["values"] = std::move(rows);
    return out;
}

ComplexMatrix matrix_from_json(const Json& j) {
    auto rows = labels_from_json(field(j, "row_labels", "matrix"), "matrix");
    auto cols = labels_from_json(field(j, "col_labels", "matrix"), "matrix");
    const Json& values = field(j, "values", "matrix");
    if (!values.is_array() || values.size() != rows.size())
        throw ValidationError("matrix: need one row of values per row label");
    MatrixXc m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const VectorXc row = complex_array(values[r], "matrix");
        if (static_cast<std::size_t>(row.size()) != cols.size())
            throw ValidationError("matrix: row " + std::to_string(r) + " has the wrong length");
        m.row(static_cast<Eigen::Index>(r)) = row.transpose();
    }
    return {std::move(rows), std::move(cols), std::move(m)};
}

Json measurement_to_json(const GroupFunction& f) {
    Json out;
    out["p"] = f.modulus().value();
    out["order"] = kAffineOrderTag;
    out["values"] = complex_array_to_json(f.values());
    return out;
}

GroupFunction measurement_from_json(const Json& j) {
    const int p = integer(field(j, "p", "measurements"), "measurements");
    const PrimeModulus mod(p);
    require_order(j, kAffineOrderTag, "measurements");
    VectorXc values = complex_array(field(j, "values", "measurements"), "measurements");
    if (values.size() != static_cast<Eigen::Index>(p) * (p - 1))
        throw ValidationError("measurements: expected p(p-1) = " + std::to_string(p * (p - 1)) + " values, got " +
                              std::to_string(values.size()));
    return {mod, std::move(values)};
}

Json heisenberg_to_json(const HeisenbergTable& t) {
    Json out;
    out["n"] = t.n();
    out["order"] = kHeisenbergOrderTag;
    out["values"] = complex_array_to_json(t.flatten());
    return out;
}

HeisenbergTable heisenberg_from_json(const Json& j) {
    const int n = integer(field(j, "n", "heisenberg measurements"), "heisenberg measurements");
    require_order(j, kHeisenbergOrderTag, "heisenberg measurements");
    return HeisenbergTable::unflatten(n, complex_array(field(j, "values", "heisenberg measurements"),
                                                       "heisenberg measurements"));
}

std::vector<Permutation> permutations_from_json(const Json& j) {
    const Json& list = field(j, "permutations", "group");
    if (!list.is_array() || list.empty()) throw ValidationError("group: permutations must be a nonempty array");
    std::vector<Permutation> out;
    for (const auto& h : list) {
        if (!h.is_array()) throw ValidationError("group: each permutation is an array");
        Permutation perm;
        for (const auto& x : h) perm.push_back(integer(x, "group"));
        if (!is_permutation(perm)) throw ValidationError("group: entry is not a permutation");
        out.push_back(std::move(perm));
    }
    return out;
}

std::vector<PatchData> patches_from_json(const Json& j, int& n) {
    n = integer(field(j, "n", "patches"), "patches");
    const Json& list = field(j, "patches", "patches");
    if (!list.is_array()) throw ValidationError("patches: \"patches\" must be an array");
    std::vector<PatchData> out;
    for (const auto& item : list) {
        const Json& s = field(item, "support", "patch");
        if (!s.is_array() || s.size() != 3) throw ValidationError("patch: support has three labels");
        PatchData p;
        for (int i = 0; i < 3; ++i) p.support[static_cast<std::size_t>(i)] = integer(s[static_cast<std::size_t>(i)], "patch");
        const VectorXc values = complex_array(field(item, "values", "patch"), "patch");
        if (values.size() != 3) throw ValidationError("patch: three values required");
        p.local_vector = ComplexVector(IndexSet({p.support[0], p.support[1], p.support[2]}), values);
        out.push_back(std::move(p));
    }
    return out;
}

Json patches_to_json(const std::vector<PatchData>& patches, int n) {
    Json out;
    out["n"] = n;
    Json list = Json::array();
    for (const auto& p : patches) {
        Json item;
        item["support"] = Json(std::vector<int>(p.support.begin(), p.support.end()));
        item["values"] = complex_array_to_json(p.local_vector.values());
        list.push_back(std::move(item));
    }
    out["patches"] = std::move(list);
    return out;
}

Json real_matrix_to_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd real_matrix_from_json(const Json& j, const char* what) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw ValidationError(std::string(what) + ": expected rows");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j[0].size()));
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (!j[r].is_array() || j[r].size() != j[0].size())
            throw ValidationError(std::string(what) + ": rows must have equal length");
        for (std::size_t c = 0; c < j[r].size(); ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = finite_number(j[r][c], what);
    }
    return m;
}

Json read_json_file(const std::string& path) {
    std::stringstream buffer;
    if (path == "-") {
        buffer << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw ValidationError("cannot open " + path);
        buffer << in.rdbuf();
    }
    try {
        return Json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("malformed JSON in " + path + ": " + e.what());
    }
}

}  // namespace affpr::io
