#pragma once

// JSON reading and writing of scalars, matrices, Hopf algebras, comodule algebras and cocycles.
// Every reader throws InputError with the JSON path of the offending value, e.g. "$.mult[3][2]".

#include <string>

#include "hopfgauge/cocycle.hpp"
#include "hopfgauge/comodule.hpp"
#include "json.hpp"

namespace hg {

using nlohmann::json;

/// Parses a file; InputError names the file and the byte offset on malformed JSON.
json read_json_file(const std::string& path);

/// Accepts an array of "p/q" power-basis coefficients or a string understood by Scalar::parse.
Scalar scalar_from_json(const json& j, const CyclotomicField* f, const std::string& path);
/// Array of d strings "p/q" for the field f (degree 1 when f is null and s is rational).
json scalar_to_json(const Scalar& s, const CyclotomicField* f);
json vec_to_json(const Vec& v, const CyclotomicField* f);
/// One JSON row per matrix row.
json matrix_to_json(const Matrix& m, const CyclotomicField* f);

/// {"basis", "mult": [[i, j, k, s]] (e_i e_j has s on e_k), "unit": [s...]}.
FinDimAlgebra algebra_from_json(const json& j, const CyclotomicField* f, const std::string& path = "$");
json algebra_to_json(const FinDimAlgebra& a, const CyclotomicField* f);

/// Algebra keys plus "comult": [[i, j, k, s]] (Delta(e_i) has s e_j (x) e_k), "counit": [s...],
/// "antipode": [[s...]] with row i the image S(e_i).
FinDimHopf hopf_from_json(const json& j, const CyclotomicField* f, const std::string& path = "$");
json hopf_to_json(const FinDimHopf& h, const CyclotomicField* f);

/// Algebra keys plus "coaction": [[i, j, k, s]] (delta(e_i) has s e_j (x) h_k), over the given H.
ComoduleAlgebra comodule_from_json(const json& j, const FinDimHopf& h, const CyclotomicField* f,
                                   const std::string& path = "$");
json coaction_to_json(const Coaction& c, const CyclotomicField* f);

/// {"group": [n_1, ...], "values": [[g, h, s]...]} with every pair exactly once.
Cocycle cocycle_from_json(const json& j, const CyclotomicField* f, const std::string& path = "$");
json cocycle_to_json(const Cocycle& c, const CyclotomicField* f);

}  // namespace hg
