/* Copyright 2026 The treeaut Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// External file formats. Portrait files look like
//   {"d": 3, "entries": {"o": [1,0,2], "o.1": [0,2,1]}}
// with absent vertices meaning the identity; assignment files name each
// letter value either inline or through a portrait file reference.

#ifndef TREEAUT_JSON_IO_HPP
#define TREEAUT_JSON_IO_HPP

#include <json.hpp>

#include <string>

#include "aut.hpp"
#include "dynamics.hpp"
#include "words.hpp"

namespace treeaut {

using Json = nlohmann::json;

Json portrait_to_json(const RootedAut& a, int depth);
RootedAut portrait_from_json(const Json& j);

Json classification_to_json(const ElementClass& cls);
Json fixed_tree_to_json(const FixedTree& ft);
Json offspring_to_json(const OffspringStats& st);
Json edge_trace_to_json(const EdgeTrace& tr);
Json vertex_trace_to_json(const VertexTrace& tr);

// Assignment spec:
//   {"d":3, "generators":[{"portrait": {...}} | {"portrait_file":"f.json"}
//                         | {"haar_at":"o.1","seed":7} | {"section":"o.1"}],
//    "t": {...same forms...}}
// File references are resolved relative to the current directory unless the
// caller resolved them already.
TreeAut letter_value_from_json(int d, const Json& spec);
Assignment assignment_from_json(const Json& j);

std::string json_dump(const Json& j);
Json json_parse(const std::string& text);

}  // namespace treeaut

#endif  // TREEAUT_JSON_IO_HPP
