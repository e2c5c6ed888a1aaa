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

#include "treeaut/treeaut.h"

#include <cstring>
#include <new>
#include <string>

#include "experiments.hpp"
#include "json_io.hpp"

using namespace treeaut;

struct ta_aut {
  TreeAut value;
};
struct ta_word {
  Word value;
};
struct ta_assignment {
  Assignment value;
};

namespace {

thread_local std::string g_last_error;

int fail(int code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return TA_OK;
  } catch (const std::invalid_argument& e) {
    return fail(TA_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(TA_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(TA_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(TA_ERR_RUNTIME, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int require(bool cond, const char* what) {
  if (cond) return TA_OK;
  return fail(TA_ERR_INVALID_ARGUMENT, what);
}

}  // namespace

extern "C" {

const char* ta_version(void) { return "1.0.0"; }

const char* ta_last_error(void) { return g_last_error.c_str(); }

void ta_string_free(char* s) { delete[] s; }

int ta_aut_identity(int d, ta_aut** out) {
  if (require(out != nullptr, "null output pointer")) return TA_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new ta_aut{TreeAut::identity(d)}; });
}

int ta_aut_from_portrait_json(const char* json, ta_aut** out) {
  if (require(out && json, "null argument")) return TA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new ta_aut{
        TreeAut::from_rooted(portrait_from_json(json_parse(json)))};
  });
}

int ta_aut_haar_rooted(int d, uint64_t seed, ta_aut** out) {
  if (require(out != nullptr, "null output pointer")) return TA_ERR_INVALID_ARGUMENT;
  return guarded(
      [&] { *out = new ta_aut{TreeAut::from_rooted(RootedAut::haar(d, seed))}; });
}

int ta_aut_haar_at(int d, const char* vertex, uint64_t seed, ta_aut** out) {
  if (require(out && vertex, "null argument")) return TA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new ta_aut{TreeAut::haar_at(d, parse_addr(vertex, d), seed)};
  });
}

int ta_aut_section(int d, const char* vertex, ta_aut** out) {
  if (require(out && vertex, "null argument")) return TA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new ta_aut{TreeAut::section(d, parse_addr(vertex, d))};
  });
}

int ta_aut_compose(const ta_aut* a, const ta_aut* b, ta_aut** out) {
  if (require(a && b && out, "null argument")) return TA_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new ta_aut{compose(a->value, b->value)}; });
}

int ta_aut_inverse(const ta_aut* a, ta_aut** out) {
  if (require(a && out, "null argument")) return TA_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new ta_aut{inverse(a->value)}; });
}

void ta_aut_free(ta_aut* a) { delete a; }

int ta_aut_d(const ta_aut* a) { return a ? a->value.d() : 0; }

int ta_aut_image_vertex(const ta_aut* a, const char* vertex, char** out) {
  if (require(a && vertex && out, "null argument")) return TA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = dup_string(
        format_addr(a->value.image(parse_addr(vertex, a->value.d()))));
  });
}

int ta_aut_image_edge(const ta_aut* a, const char* edge, char** out) {
  if (require(a && edge && out, "null argument")) return TA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = dup_string(
        format_edge(a->value.image_edge(parse_edge(edge, a->value.d()))));
  });
}

int ta_aut_local_perm(const ta_aut* a, const char* vertex, int* images,
                      size_t len) {
  if (require(a && vertex && images, "null argument"))
    return TA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    if (len < static_cast<size_t>(a->value.d()))
      throw std::invalid_argument("image buffer shorter than d");
    LocalPerm p = a->value.local(parse_addr(vertex, a->value.d()));
    std::vector<int> v = p.images();
    for (std::size_t i = 0; i < v.size(); ++i) images[i] = v[i];
  });
}

int ta_aut_target(const ta_aut* a, char** out) {
  if (require(a && out, "null argument")) return TA_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = dup_string(format_addr(a->value.target())); });
}

int ta_aut_equal_to_depth(const ta_aut* a, const ta_aut* b, int depth,
                          int* out) {
  if (require(a && b && out, "null argument")) return TA_ERR_INVALID_ARGUMENT;
  return guarded(
      [&] { *out = equals_to_depth(a->value, b->value, depth) ? 1 : 0; });
}

int ta_aut_displacement(const ta_aut* a, const char* vertex, int* out) {
  if (require(a && vertex && out, "null argument"))
    return TA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = displacement(a->value, parse_addr(vertex, a->value.d()));
  });
}

int ta_aut_classify_json(const ta_aut* a, char** out) {
  if (require(a && out, "null argument")) return TA_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = dup_string(json_dump(cmd_classify(a->value))); });
}

int ta_aut_fixtree_json(const ta_aut* a, int depth, char** out) {
  if (require(a && out, "null argument")) return TA_ERR_INVALID_ARGUMENT;
  return guarded(
      [&] { *out = dup_string(json_dump(cmd_fixtree(a->value, depth))); });
}

int ta_aut_portrait_json(const ta_aut* a, int depth, char** out) {
  if (require(a && out, "null argument")) return TA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    if (!a->value.target().is_base())
      throw std::invalid_argument(
          "portrait serialization covers rooted elements only");
    *out = dup_string(
        json_dump(portrait_to_json(a->value.rooted_part(), depth)));
  });
}

int ta_sample_portrait_json(int d, int depth, uint64_t seed, char** out) {
  if (require(out != nullptr, "null output pointer"))
    return TA_ERR_INVALID_ARGUMENT;
  return guarded(
      [&] { *out = dup_string(json_dump(cmd_sample(d, depth, seed))); });
}

int ta_word_parse(const char* literal, ta_word** out) {
  if (require(literal && out, "null argument")) return TA_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new ta_word{Word::parse(literal)}; });
}

int ta_word_literal(const ta_word* w, char** out) {
  if (require(w && out, "null argument")) return TA_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = dup_string(w->value.literal()); });
}

int ta_word_cyclic_reduce(const ta_word* w, ta_word** out) {
  if (require(w && out, "null argument")) return TA_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new ta_word{w->value.cyclic_reduced()}; });
}

void ta_word_free(ta_word* w) { delete w; }

int ta_assignment_from_json(const char* json, ta_assignment** out) {
  if (require(json && out, "null argument")) return TA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new ta_assignment{assignment_from_json(json_parse(json))};
  });
}

void ta_assignment_free(ta_assignment* a) { delete a; }

int ta_word_evaluate(const ta_word* w, const ta_assignment* asg,
                     ta_aut** out) {
  if (require(w && asg && out, "null argument")) return TA_ERR_INVALID_ARGUMENT;
  return guarded(
      [&] { *out = new ta_aut{evaluate(w->value, asg->value)}; });
}

int ta_word_report_json(const ta_word* w, const ta_assignment* asg, int depth,
                        char** out) {
  if (require(w && asg && out, "null argument")) return TA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = dup_string(json_dump(cmd_word(w->value, asg->value, depth)));
  });
}

int ta_experiment_run(const char* config_json, ta_record_callback cb,
                      void* user_data, char** summary_json) {
  if (require(config_json && summary_json, "null argument"))
    return TA_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    ExperimentResult res = run_experiment_json(json_parse(config_json));
    if (cb)
      for (const Json& record : res.records)
        cb(json_dump(record).c_str(), user_data);
    *summary_json = dup_string(json_dump(res.summary));
  });
}

}  // extern "C"
