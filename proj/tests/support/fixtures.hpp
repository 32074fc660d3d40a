/*
   Copyright 2026 The concat-calc authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef CONCAT_TESTS_FIXTURES_HPP
#define CONCAT_TESTS_FIXTURES_HPP

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "concat/bigfloat.hpp"

namespace concat::testgen {

inline BigFloat golden(const std::string& name, mpfr_prec_t prec = 160) {
    static nlohmann::json doc = [] {
        std::ifstream in(std::string(CONCAT_FIXTURES_DIR) + "/quadrature_golden.json");
        if (!in) throw std::runtime_error("missing quadrature_golden.json fixture");
        nlohmann::json j;
        in >> j;
        return j;
    }();
    const auto& entry = doc.at("values").at(name);
    return BigFloat::from_string(entry.at("value").get<std::string>(), prec);
}

}  // namespace concat::testgen

#endif
