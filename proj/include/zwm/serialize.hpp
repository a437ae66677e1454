// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include "zwm/smallmat.hpp"

namespace zwm {

/// Matrix fixture schema: { "dim": n, "re": row-major, "im": row-major }.
inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json j;
    j["dim"] = m.dim();
    std::vector<double> re, im;
    re.reserve(static_cast<std::size_t>(m.dim()) * m.dim());
    im.reserve(re.capacity());
    for (int i = 0; i < m.dim(); ++i)
        for (int k = 0; k < m.dim(); ++k) {
            re.push_back(m.at(i, k).real());
            im.push_back(m.at(i, k).imag());
        }
    j["re"] = re;
    j["im"] = im;
    return j;
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    const int dim = j.at("dim").get<int>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != static_cast<std::size_t>(dim) * dim || im.size() != re.size())
        throw Error("matrix_from_json: entry count does not match dim");
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
            const std::size_t idx = static_cast<std::size_t>(i) * dim + k;
            m.at(i, k) = Complex(re[idx], im[idx]);
        }
    return m;
}

}  // namespace zwm
