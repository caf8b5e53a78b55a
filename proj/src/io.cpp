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

#include "steerlab/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "steerlab/errors.hpp"

namespace steerlab {

namespace {

void expect_schema(const Json& j, const char* schema) {
    if (!j.is_object()) throw ParseError(std::string("expected a JSON object for ") + schema);
    const auto it = j.find("schema");
    if (it == j.end() || !it->is_string() || it->get<std::string>() != schema) {
        throw ParseError(std::string("missing or wrong \"schema\" field, expected \"") + schema + "\"");
    }
}

template <class T>
T field(const Json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
    try {
        return it->get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("field \"") + key + "\": " + e.what());
    }
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    CMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw ParseError("matrix must be square");
        for (Eigen::Index c = 0; c < n; ++c) {
            const Json& e = row[static_cast<std::size_t>(c)];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                throw ParseError("matrix entries must be [re, im] number pairs");
            }
            m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

Json to_json(const Assemblage& asm_) {
    Json comps = Json::array();
    for (int x = 0; x < asm_.n_inputs(); ++x)
        for (int a = 0; a < asm_.n_outputs(); ++a)
            comps.push_back({{"a", a}, {"x", x}, {"matrix", matrix_to_json(asm_.component(a, x).matrix())}});
    return {{"schema", "assemblage/v1"},
            {"m", asm_.n_inputs()},
            {"o", asm_.n_outputs()},
            {"dim", asm_.dim()},
            {"components", std::move(comps)}};
}

Assemblage assemblage_from_json(const Json& j) {
    expect_schema(j, "assemblage/v1");
    const int m = field<int>(j, "m");
    const int o = field<int>(j, "o");
    const int dim = field<int>(j, "dim");
    if (m <= 0 || o <= 0 || dim <= 0 || dim > kMaxDim) throw ParseError("m, o, dim must be positive (dim <= 64)");
    const Json comps = field<Json>(j, "components");
    if (!comps.is_array() || comps.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(o)) {
        throw ParseError("components must list all m*o entries");
    }
    std::vector<HermMat> slots(static_cast<std::size_t>(m * o));
    std::vector<bool> seen(slots.size(), false);
    for (const Json& c : comps) {
        const int a = field<int>(c, "a");
        const int x = field<int>(c, "x");
        if (a < 0 || a >= o || x < 0 || x >= m) throw ParseError("component index out of range");
        const auto idx = static_cast<std::size_t>(x * o + a);
        if (seen[idx]) throw ParseError("duplicate component");
        const CMatrix mat = matrix_from_json(field<Json>(c, "matrix"));
        if (mat.rows() != dim) throw ParseError("component dimension differs from dim");
        slots[idx] = HermMat(mat);
        seen[idx] = true;
    }
    return Assemblage(m, o, dim, std::move(slots));
}

Json state_to_json(const HermMat& state, int dim_a, int dim_b) {
    return {{"schema", "state/v1"}, {"dims", {dim_a, dim_b}}, {"matrix", matrix_to_json(state.matrix())}};
}

HermMat state_from_json(const Json& j, int* dim_a) {
    expect_schema(j, "state/v1");
    const auto dims = field<std::vector<int>>(j, "dims");
    if (dims.size() != 2 || dims[0] <= 0 || dims[1] <= 0) throw ParseError("dims must be [dA, dB]");
    const CMatrix m = matrix_from_json(field<Json>(j, "matrix"));
    if (m.rows() != dims[0] * dims[1]) throw ParseError("state dimension differs from dA*dB");
    if (dim_a) *dim_a = dims[0];
    return HermMat(m);
}

Json to_json(const MeasurementSet& meas) {
    Json inputs = Json::array();
    for (const auto& povm : meas.elements) {
        Json elems = Json::array();
        for (const auto& e : povm) elems.push_back(matrix_to_json(e.matrix()));
        inputs.push_back(std::move(elems));
    }
    return {{"schema", "measurements/v1"}, {"inputs", std::move(inputs)}};
}

MeasurementSet measurements_from_json(const Json& j) {
    expect_schema(j, "measurements/v1");
    const Json inputs = field<Json>(j, "inputs");
    if (!inputs.is_array() || inputs.empty()) throw ParseError("inputs must be a nonempty array");
    MeasurementSet meas;
    for (const Json& povm : inputs) {
        if (!povm.is_array() || povm.empty()) throw ParseError("each input must list its POVM elements");
        std::vector<HermMat> elems;
        for (const Json& e : povm) elems.emplace_back(matrix_from_json(e));
        meas.elements.push_back(std::move(elems));
    }
    return meas;
}

Json kraus_to_json(const std::vector<CMatrix>& elements) {
    Json elems = Json::array();
    for (const auto& k : elements) elems.push_back(matrix_to_json(k));
    return {{"schema", "kraus/v1"}, {"elements", std::move(elems)}};
}

std::vector<CMatrix> kraus_from_json(const Json& j) {
    expect_schema(j, "kraus/v1");
    const Json elems = field<Json>(j, "elements");
    if (!elems.is_array() || elems.empty()) throw ParseError("elements must be a nonempty array");
    std::vector<CMatrix> out;
    for (const Json& e : elems) out.push_back(matrix_from_json(e));
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_text_file_atomic(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ParseError("cannot write " + tmp.string());
        out << text;
        if (!out.flush()) throw ParseError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw ParseError("cannot rename onto " + path + ": " + ec.message());
    }
}

}  // namespace steerlab
