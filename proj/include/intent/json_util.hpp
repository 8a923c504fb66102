// Copyright 2026 The intentsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef INTENT_JSON_UTIL_HPP_
#define INTENT_JSON_UTIL_HPP_

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>

#include "json.hpp"

namespace intent {

// Strict-mode key check: throws ErrorT(path, message) for a key outside
// `allowed`. Used by every file loader.
template <typename ErrorT>
void check_keys(const nlohmann::json& j,
                std::initializer_list<std::string_view> allowed,
                const std::string& path) {
  if (!j.is_object()) throw ErrorT(path + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ErrorT(path + ": unknown key '" + key + "'");
  }
}

// Parses a whole file as JSON; throws ParseError on I/O or syntax errors.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace intent

#endif  // INTENT_JSON_UTIL_HPP_
