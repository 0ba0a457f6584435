// Copyright 2026 The nonlocality-lab Authors
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

/**
 * @file
 * JSON form of a BoxTable: an object keyed "x,y", each value the row
 * [P(0,0|x,y), P(0,1|x,y), P(1,0|x,y), P(1,1|x,y)].
 */

#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "correlation_core.hpp"

namespace nonlocality {

inline nlohmann::json to_json(const BoxTable &t) {
    nlohmann::json j = nlohmann::json::object();
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const auto &r = t.row(x, y);
            j[BoxTable::setting_key(x, y)] = {r[0], r[1], r[2], r[3]};
        }
    }
    return j;
}

/// Throws std::invalid_argument on missing keys, wrong row length or an invalid table.
inline BoxTable box_table_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw std::invalid_argument("BoxTable JSON must be an object");
    }
    BoxTable::Rows rows{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const std::string key = BoxTable::setting_key(x, y);
            const auto it = j.find(key);
            if (it == j.end() || !it->is_array() || it->size() != 4) {
                throw std::invalid_argument("BoxTable JSON: key \"" + key + "\" must hold 4 probabilities");
            }
            for (std::size_t k = 0; k < 4; ++k) {
                if (!(*it)[k].is_number()) {
                    throw std::invalid_argument("BoxTable JSON: non-numeric entry under \"" + key + "\"");
                }
                rows[2 * x + y][k] = (*it)[k].get<double>();
            }
        }
    }
    return BoxTable(rows);
}

} // namespace nonlocality
