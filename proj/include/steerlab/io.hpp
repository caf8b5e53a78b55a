// Copyright 2026 The steerlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STEERLAB_IO_HPP
#define STEERLAB_IO_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "steerlab/assemblage.hpp"
#include "steerlab/matcore.hpp"

namespace steerlab {

using Json = nlohmann::json;

// Matrices are arrays of rows; every entry is a [re, im] pair. Both triangles
// are written. Doubles are emitted with round-trip precision, so
// parse(serialize(x)) is bit-identical.

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

/// {"schema": "assemblage/v1", "m", "o", "dim", "components": [{"a", "x", "matrix"}]}
Json to_json(const Assemblage& asm_);
Assemblage assemblage_from_json(const Json& j);

/// {"schema": "state/v1", "dims": [dA, dB], "matrix"}
Json state_to_json(const HermMat& state, int dim_a, int dim_b);
HermMat state_from_json(const Json& j, int* dim_a = nullptr);

/// {"schema": "measurements/v1", "inputs": [[matrix, ...], ...]}
Json to_json(const MeasurementSet& meas);
MeasurementSet measurements_from_json(const Json& j);

/// {"schema": "kraus/v1", "elements": [matrix, ...]}
Json kraus_to_json(const std::vector<CMatrix>& elements);
std::vector<CMatrix> kraus_from_json(const Json& j);

Json read_json_file(const std::string& path);
/// Writes to a temporary sibling and renames it over `path`.
void write_text_file_atomic(const std::string& path, const std::string& text);

}  // namespace steerlab

#endif  // STEERLAB_IO_HPP
