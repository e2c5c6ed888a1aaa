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

#include "json_io.hpp"

#include <fstream>

namespace treeaut {

Json portrait_to_json(const RootedAut& a, int depth) {
  Json entries = Json::object();
  for (const VertexAddr& v : ball_vertices(a.d(), depth)) {
    LocalPerm p = a.local(v);
    if (p.is_identity()) continue;
    entries[format_addr(v)] = p.images();
  }
  return Json{{"d", a.d()}, {"entries", entries}};
}

RootedAut portrait_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("d"))
    throw std::invalid_argument("portrait JSON needs a 'd' field");
  int d = j.at("d").get<int>();
  check_degree(d);
  PortraitEntries entries = make_portrait_entries();
  if (j.contains("entries")) {
    for (const auto& [key, val] : j.at("entries").items()) {
      VertexAddr v = parse_addr(key, d);
      LocalPerm p = LocalPerm::from_images(d, val.get<std::vector<int>>());
      entries.emplace(std::move(v), p);
    }
  }
  return RootedAut::from_portrait(d, std::move(entries));
}

Json classification_to_json(const ElementClass& cls) {
  Json out{{"kind", kind_name(cls.kind)}, {"delta", cls.delta}};
  if (cls.inverted_edge)
    out["witness"] = format_edge(*cls.inverted_edge);
  else
    out["witness"] = format_addr(cls.witness);
  return out;
}

Json fixed_tree_to_json(const FixedTree& ft) {
  Json fixed = Json::array();
  for (const VertexAddr& v : ft.members) fixed.push_back(format_addr(v));
  return Json{{"witness", format_addr(ft.root)},
              {"depth", ft.truncation_depth},
              {"fixed", fixed},
              {"hit_boundary", ft.hit_boundary}};
}

Json offspring_to_json(const OffspringStats& st) {
  Json counts = Json::object();
  for (std::size_t k = 0; k < st.counts.size(); ++k)
    counts[std::to_string(k)] = st.counts[k];
  return Json{{"counts", counts}, {"internal_total", st.internal_total}};
}

Json edge_trace_to_json(const EdgeTrace& tr) {
  Json items = Json::array();
  for (const DirectedEdge& e : tr.items) items.push_back(format_edge(e));
  return Json{{"items", items},
              {"closed", tr.closed},
              {"simple", tr.simple},
              {"all_positive", tr.all_positive}};
}

Json vertex_trace_to_json(const VertexTrace& tr) {
  Json items = Json::array();
  for (const VertexAddr& v : tr.items) items.push_back(format_addr(v));
  return Json{{"items", items}, {"closed", tr.closed}, {"simple", tr.simple}};
}

TreeAut letter_value_from_json(int d, const Json& spec) {
  if (!spec.is_object())
    throw std::invalid_argument("letter value spec must be an object");
  if (spec.contains("portrait"))
    return TreeAut::from_rooted(portrait_from_json(spec.at("portrait")));
  if (spec.contains("portrait_file")) {
    std::string path = spec.at("portrait_file").get<std::string>();
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open portrait file: " + path);
    Json j;
    in >> j;
    return TreeAut::from_rooted(portrait_from_json(j));
  }
  if (spec.contains("haar_at")) {
    VertexAddr v = parse_addr(spec.at("haar_at").get<std::string>(), d);
    std::uint64_t seed = spec.at("seed").get<std::uint64_t>();
    return TreeAut::haar_at(d, v, seed);
  }
  if (spec.contains("section"))
    return TreeAut::section(d,
                            parse_addr(spec.at("section").get<std::string>(), d));
  throw std::invalid_argument(
      "letter value spec needs portrait | portrait_file | haar_at | section");
}

Assignment assignment_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("t"))
    throw std::invalid_argument("assignment JSON needs 'd' and 't'");
  int d = j.at("d").get<int>();
  check_degree(d);
  std::vector<TreeAut> gens;
  if (j.contains("generators"))
    for (const Json& spec : j.at("generators"))
      gens.push_back(letter_value_from_json(d, spec));
  TreeAut t = letter_value_from_json(d, j.at("t"));
  return Assignment(d, std::move(gens), std::move(t));
}

std::string json_dump(const Json& j) { return j.dump(); }

Json json_parse(const std::string& text) { return Json::parse(text); }

}  // namespace treeaut
