#pragma once

#include <string>
#include <vector>

#include "affpr/group_fourier.hpp"
#include "affpr/heisenberg.hpp"
#include "affpr/permutations.hpp"
#include "affpr/retrieval_diagnostics.hpp"
#include "affpr/types.hpp"
#include "json.hpp"

namespace affpr::io {

using Json = nlohmann::ordered_json;

// Complex numbers are [re, im]; plain numbers are accepted as real values on input.

Json to_json(Complex z);
Complex complex_from_json(const Json& j, const char* what);

/// {"labels": [...], "values": [[re, im], ...]}
Json to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j);

/// {"row_labels": [...], "col_labels": [...], "values": [[[re, im], ...], ...]}
Json to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const Json& j);

/// {"p": P, "order": "l-outer-k-inner", "values": [...]}
Json measurement_to_json(const GroupFunction& f);
GroupFunction measurement_from_json(const Json& j);

/// {"n": N, "order": "k-outer-l-inner", "values": [...]}
Json heisenberg_to_json(const HeisenbergTable& t);
HeisenbergTable heisenberg_from_json(const Json& j);

/// {"permutations": [[...], ...]}
std::vector<Permutation> permutations_from_json(const Json& j);

/// {"n": N, "patches": [{"support": [a, b, c], "values": [[re, im] x 3]}, ...]}
std::vector<PatchData> patches_from_json(const Json& j, int& n);
Json patches_to_json(const std::vector<PatchData>& patches, int n);

/// Rows of real numbers.
Json real_matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd real_matrix_from_json(const Json& j, const char* what);

/// Parses a file ("-" reads standard input); malformed input raises ValidationError.
Json read_json_file(const std::string& path);

}  // namespace affpr::io
