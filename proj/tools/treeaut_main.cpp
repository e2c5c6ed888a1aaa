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

// Experiment harness CLI. All functionality goes through the shared
// library's C interface; this binary only parses flags, shuttles JSON, and
// writes output files.
//
// Exit codes: 0 success, 2 invalid configuration or input, 3 experiment
// assertion failure.

#include <treeaut/treeaut.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

using nlohmann::json;

namespace {

constexpr int kExitBadConfig = 2;
constexpr int kExitExperimentFailed = 3;

[[noreturn]] void die(const std::string& message, int code = kExitBadConfig) {
  std::cerr << "treeaut: " << message << "\n";
  std::exit(code);
}

std::string take_string(int status, char* s) {
  if (status != TA_OK) die(ta_last_error());
  std::string out(s);
  ta_string_free(s);
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) die("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    die("bad JSON in " + path + ": " + e.what());
  }
  return j;
}

std::string timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct AutSpec {
  std::string portrait_file;
  std::string section;
  std::string word;
  std::string assignment_file;
  std::uint64_t seed = 0;
  bool haar = false;
  std::string haar_at;
  int d = 3;
};

ta_assignment* load_assignment(const std::string& path) {
  json j = read_json_file(path);
  ta_assignment* asg = nullptr;
  if (ta_assignment_from_json(j.dump().c_str(), &asg) != TA_OK)
    die(ta_last_error());
  return asg;
}

// Builds an automorphism from one of the accepted input forms.
ta_aut* build_aut(const AutSpec& spec) {
  ta_aut* a = nullptr;
  int sources = (!spec.portrait_file.empty()) + (!spec.section.empty()) +
                (!spec.word.empty()) + spec.haar + (!spec.haar_at.empty());
  if (sources != 1)
    die("need exactly one of --portrait, --section, --word, --haar, "
        "--haar-at");
  int status = TA_OK;
  if (!spec.portrait_file.empty()) {
    json j = read_json_file(spec.portrait_file);
    status = ta_aut_from_portrait_json(j.dump().c_str(), &a);
  } else if (!spec.section.empty()) {
    status = ta_aut_section(spec.d, spec.section.c_str(), &a);
  } else if (spec.haar) {
    status = ta_aut_haar_rooted(spec.d, spec.seed, &a);
  } else if (!spec.haar_at.empty()) {
    status = ta_aut_haar_at(spec.d, spec.haar_at.c_str(), spec.seed, &a);
  } else {
    if (spec.assignment_file.empty())
      die("--word needs --assignment <file>");
    ta_assignment* asg = load_assignment(spec.assignment_file);
    ta_word* w = nullptr;
    if (ta_word_parse(spec.word.c_str(), &w) != TA_OK) die(ta_last_error());
    status = ta_word_evaluate(w, asg, &a);
    ta_word_free(w);
    ta_assignment_free(asg);
  }
  if (status != TA_OK) die(ta_last_error());
  return a;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) die("cannot write: " + out_path);
  out << j.dump(2) << "\n";
}

struct JsonlWriter {
  std::ofstream stream;
  bool enabled = false;
};

void record_cb(const char* line, void* user_data) {
  auto* w = static_cast<JsonlWriter*>(user_data);
  if (w->enabled) w->stream << line << "\n";
}

void write_csv(const json& summary, const std::string& path) {
  if (!summary.contains("csv")) return;
  std::ofstream out(path);
  if (!out) die("cannot write: " + path);
  for (const json& row : summary.at("csv")) {
    bool first = true;
    for (const json& cell : row) {
      if (!first) out << ",";
      first = false;
      if (cell.is_string())
        out << cell.get<std::string>();
      else
        out << cell.dump();
    }
    out << "\n";
  }
}

int run_experiment(json config, const std::string& out_dir) {
  std::string name = config.at("experiment").get<std::string>();
  JsonlWriter writer;
  std::string records_path, summary_path, csv_path;
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    records_path = out_dir + "/" + name + ".jsonl";
    summary_path = out_dir + "/" + name + ".summary.json";
    csv_path = out_dir + "/" + name + ".summary.csv";
    writer.stream.open(records_path);
    if (!writer.stream) die("cannot write: " + records_path);
    writer.enabled = true;
    json header{{"type", "header"},
                {"timestamp", timestamp()},
                {"config", config}};
    writer.stream << header.dump() << "\n";
  }
  char* summary_raw = nullptr;
  int status = ta_experiment_run(config.dump().c_str(), record_cb, &writer,
                                 &summary_raw);
  if (status != TA_OK) die(ta_last_error());
  json summary = json::parse(take_string(status, summary_raw));
  if (!out_dir.empty()) {
    std::ofstream s(summary_path);
    s << summary.dump(2) << "\n";
    write_csv(summary, csv_path);
  }
  json echo = summary;
  echo.erase("csv");
  std::cout << echo.dump(2) << "\n";
  if (!summary.value("pass", false)) {
    std::cerr << "treeaut: experiment assertion failed\n";
    return kExitExperimentFailed;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tree-automorphism sampling and word experiments"};
  app.require_subcommand(1);

  std::string config_file, out_dir, out_file;
  int d = 3, depth = 6, threads = 0;
  std::uint64_t samples = 0, seed = 1;
  std::string word_literal, assignment_file, targets_csv;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--d", d, "tree degree");
    cmd->add_option("--depth", depth, "truncation depth");
    cmd->add_option("--seed", seed, "base seed (decimal 64-bit)");
    cmd->add_option("--out", out_file, "output file (default: stdout)");
  };

  auto* sample = app.add_subcommand("sample", "emit a Haar-random portrait");
  add_common(sample);

  AutSpec spec;
  auto add_aut_inputs = [&](CLI::App* cmd) {
    cmd->add_option("--portrait", spec.portrait_file, "portrait JSON file");
    cmd->add_option("--section", spec.section,
                    "canonical section to a vertex literal");
    cmd->add_option("--word", spec.word, "word literal");
    cmd->add_option("--assignment", spec.assignment_file,
                    "assignment JSON file");
    cmd->add_flag("--haar", spec.haar, "Haar-random rooted element");
    cmd->add_option("--haar-at", spec.haar_at,
                    "Haar-random element over the given fiber");
  };

  auto* classify = app.add_subcommand("classify", "classify an automorphism");
  add_common(classify);
  add_aut_inputs(classify);

  auto* fixtree =
      app.add_subcommand("fixtree", "fixed tree and offspring statistics");
  add_common(fixtree);
  add_aut_inputs(fixtree);

  auto* word = app.add_subcommand("word", "word analysis report");
  add_common(word);
  word->add_option("--word", word_literal, "word literal")->required();
  word->add_option("--assignment", assignment_file, "assignment JSON file")
      ->required();

  auto* experiment = app.add_subcommand("experiment", "run an experiment");
  std::string exp_name;
  experiment->add_option("name", exp_name,
                         "haar-gof | gw | eta-verify | cocycle-uniformity | "
                         "almost-free")
      ->required();
  experiment->add_option("--config", config_file, "config JSON file");
  experiment->add_option("--d", d, "tree degree");
  experiment->add_option("--depth", depth, "truncation depth");
  experiment->add_option("--samples", samples, "sample count");
  experiment->add_option("--seed", seed, "base seed");
  experiment->add_option("--threads", threads, "worker threads (0 = auto)");
  experiment->add_option("--word", word_literal, "word literal");
  experiment->add_option("--assignment", assignment_file,
                         "assignment JSON file (generators reused)");
  experiment->add_option("--targets", targets_csv,
                         "comma-separated fiber targets");
  std::string edge_literal;
  experiment->add_option("--edge", edge_literal, "base edge literal");
  experiment->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitBadConfig;
  }

  if (sample->parsed()) {
    char* s = nullptr;
    int status = ta_sample_portrait_json(d, depth, seed, &s);
    if (status != TA_OK) die(ta_last_error());
    emit(json::parse(take_string(status, s)), out_file);
    return 0;
  }

  if (classify->parsed() || fixtree->parsed()) {
    spec.d = d;
    spec.seed = seed;
    ta_aut* a = build_aut(spec);
    char* s = nullptr;
    int status = classify->parsed() ? ta_aut_classify_json(a, &s)
                                    : ta_aut_fixtree_json(a, depth, &s);
    if (status != TA_OK) die(ta_last_error());
    emit(json::parse(take_string(status, s)), out_file);
    ta_aut_free(a);
    return 0;
  }

  if (word->parsed()) {
    ta_assignment* asg = load_assignment(assignment_file);
    ta_word* w = nullptr;
    if (ta_word_parse(word_literal.c_str(), &w) != TA_OK) die(ta_last_error());
    char* s = nullptr;
    int status = ta_word_report_json(w, asg, depth, &s);
    if (status != TA_OK) die(ta_last_error());
    emit(json::parse(take_string(status, s)), out_file);
    ta_word_free(w);
    ta_assignment_free(asg);
    return 0;
  }

  // experiment
  json config = config_file.empty() ? json::object()
                                    : read_json_file(config_file);
  config["experiment"] = exp_name;
  // flags override the config file
  for (const auto* opt : experiment->get_options()) {
    (void)opt;
  }
  if (experiment->count("--d")) config["d"] = d;
  if (experiment->count("--depth")) config["depth"] = depth;
  if (experiment->count("--samples")) config["samples"] = samples;
  if (experiment->count("--seed")) config["seed"] = seed;
  if (experiment->count("--threads")) config["threads"] = threads;
  if (experiment->count("--word")) config["word"] = word_literal;
  if (experiment->count("--edge")) config["edge"] = edge_literal;
  if (experiment->count("--targets")) {
    json targets = json::array();
    std::string rest = targets_csv;
    while (!rest.empty()) {
      auto comma = rest.find(',');
      targets.push_back(rest.substr(0, comma));
      if (comma == std::string::npos) break;
      rest = rest.substr(comma + 1);
    }
    config["targets"] = targets;
  }
  if (experiment->count("--assignment")) {
    json asg = read_json_file(assignment_file);
    if (asg.contains("generators")) config["generators"] = asg["generators"];
    if (!config.contains("d") && asg.contains("d")) config["d"] = asg["d"];
  }
  return run_experiment(std::move(config), out_dir);
}
