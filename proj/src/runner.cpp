// Copyright 2026 The vqt Authors
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

#include "vqt/runner.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include "vqt/errors.hpp"

namespace vqt {

namespace {

using boost::property_tree::ptree;
using nlohmann::json;

[[noreturn]] void config_error(const std::string& message) { throw Error(ErrorCode::ConfigError, message); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty() || !std::isfinite(v)) {
    config_error(field + ": expected a number, got '" + text + "'");
  }
  return v;
}

std::uint64_t to_unsigned(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    config_error(field + ": expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

int to_int(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    config_error(field + ": expected an integer, got '" + text + "'");
  }
  return v;
}

bool to_bool(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "no" || t == "0") return false;
  config_error(field + ": expected true or false, got '" + text + "'");
}

CostVariant to_cost(const std::string& field, const std::string& text) {
  try {
    return parse_cost_variant(trim(text));
  } catch (const Error& e) {
    config_error(field + ": " + e.what());
  }
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"problem", {"benchmark", "instance", "encoder", "electrons", "penalty", "symmetry_qubit"}},
      {"ansatz", {"blocks", "rotation_axis", "entangler", "initial_bits"}},
      {"noise", {"qx", "qy", "qz", "rate"}},
      {"cost", {"step", "compare", "alpha", "beta"}},
      {"train",
       {"iterations", "lr0", "clip_threshold", "fd_eps", "threads", "max_backtracks", "require_admissible_start"}},
      {"survey", {"samples", "fd_eps", "seed"}},
      {"bounds", {"samples", "epsilon", "seed"}},
      {"output", {"dir", "seeds", "parallel"}},
  };
  return keys;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string metric_name(const ProblemInstance& p) {
  return p.kind == BenchmarkKind::Qaoa ? "success_rate" : "fidelity";
}

std::string code_version() {
#ifdef VQT_VERSION
  return VQT_VERSION;
#else
  return "unknown";
#endif
}

// An existing output file must carry the same config hash: on the first line
// of a CSV, or under "config_hash" (possibly inside "provenance") in JSON.
void guard_existing(const std::filesystem::path& path, const std::string& hash) {
  std::ifstream in(path);
  if (!in) return;
  std::string found;
  if (path.extension() == ".json") {
    const json j = json::parse(in, nullptr, false);
    if (j.is_object() && j.contains("config_hash")) {
      found = j["config_hash"].get<std::string>();
    } else if (j.is_object() && j.contains("provenance")) {
      found = j["provenance"].value("config_hash", "");
    }
  } else {
    std::string first;
    std::getline(in, first);
    const std::string prefix = "# config_hash=";
    if (first.rfind(prefix, 0) == 0) found = first.substr(prefix.size());
  }
  if (found != hash) {
    config_error(path.string() + " was written by a different configuration (hash '" + found +
                 "', this config is " + hash + ")");
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Internal, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::Internal, "write failed for " + path.string());
}

json provenance(const RunConfig& cfg, double wall_seconds) {
  std::string echo;
  if (std::ifstream in(cfg.source); in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    echo = buf.str();
  }
  return {{"config_hash", cfg.hash()},
          {"config_text", echo},
          {"config_file", cfg.source.string()},
          {"code_version", code_version()},
          {"wall_time_s", wall_seconds}};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Prepared {
  ProblemInstance problem;
  AnsatzSpec ansatz;
};

Prepared prepare(const RunConfig& cfg) {
  try {
    ProblemInstance p = resolve_instance(cfg);
    AnsatzSpec a = resolve_ansatz(cfg, p);
    return {std::move(p), std::move(a)};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    config_error(std::string("problem setup: ") + e.what());
  }
}

TrainConfig train_config_for(const RunConfig& cfg, CostVariant cost, std::uint64_t seed) {
  TrainConfig t = cfg.train;
  t.step_cost = cost;
  t.seed = seed;
  return t;
}

json record_json(const TrainRecord& r, std::uint64_t seed, const std::filesystem::path& csv) {
  json j = {{"seed", seed},
            {"final_c1", r.final_c1},
            {"final_metric", r.final_metric},
            {"parameter_quality", r.parameter_quality},
            {"final_subspace_weight", r.final_subspace_weight},
            {"init_attempts", r.init_attempts},
            {"evaluations", r.evaluations},
            {"iterations_completed", r.iterations.size()},
            {"aborted", r.aborted},
            {"csv", csv.filename().string()}};
  if (r.aborted) j["abort_reason"] = r.abort_reason;
  return j;
}

struct Stats {
  double mean = 0.0;
  double stddev = 0.0;
};

Stats stats_of(const std::vector<double>& v) {
  Stats s;
  if (v.empty()) return s;
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    double acc = 0.0;
    for (double x : v) acc += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(acc / static_cast<double>(v.size() - 1));
  }
  return s;
}

// Trains every (cost, seed) pair; returns records indexed [cost][seed].
std::vector<std::vector<TrainRecord>> train_all(const RunConfig& cfg, const Prepared& prep,
                                                const std::vector<CostVariant>& costs, std::ostream& log) {
  const std::string hash = cfg.hash();
  for (CostVariant c : costs)
    for (auto seed : cfg.seeds) guard_existing(train_csv_path(cfg, c, seed), hash);

  std::vector<std::vector<TrainRecord>> records(costs.size(), std::vector<TrainRecord>(cfg.seeds.size()));
  std::mutex log_mutex;
  parallel_for(costs.size() * cfg.seeds.size(), cfg.parallel, [&](std::size_t job) {
    const std::size_t ci = job / cfg.seeds.size(), si = job % cfg.seeds.size();
    const CostVariant cost = costs[ci];
    const std::uint64_t seed = cfg.seeds[si];
    const std::string stage = "train " + to_string(cost) + " seed " + std::to_string(seed);
    try {
      TrainRecord r = train(prep.problem, prep.ansatz, cfg.noise, train_config_for(cfg, cost, seed));
      std::ostringstream csv;
      csv << "# config_hash=" << hash << "\n";
      write_train_csv(csv, r);
      write_text(train_csv_path(cfg, cost, seed), csv.str());
      {
        std::lock_guard lock(log_mutex);
        log << stage << ": final c1 " << format_double(r.final_c1) << ", " << metric_name(prep.problem) << " "
            << format_double(r.final_metric) << (r.aborted ? " (aborted: " + r.abort_reason + ")" : "") << "\n";
      }
      records[ci][si] = std::move(r);
    } catch (const Error& e) {
      throw Error(e.code(), stage + ": " + e.what());
    }
  });
  return records;
}

json report_json(const BoundReport& r) {
  json params = json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  json j = {{"claim", r.claim},
            {"instances", r.instances},
            {"inapplicable", r.inapplicable},
            {"checks", r.checks},
            {"violations", r.violations},
            {"passed", r.passed()},
            {"parameters", params},
            {"slacks", r.slacks}};
  j["min_slack"] = std::isfinite(r.min_slack) ? json(r.min_slack) : json(nullptr);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& item : split_list(text)) {
    const auto dash = item.find('-');
    if (dash != std::string::npos && dash > 0) {
      const auto lo = to_unsigned("seeds", item.substr(0, dash));
      const auto hi = to_unsigned("seeds", item.substr(dash + 1));
      if (hi < lo) config_error("seeds: empty range '" + item + "'");
      for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      seeds.push_back(to_unsigned("seeds", item));
    }
  }
  if (seeds.empty()) config_error("seeds: the list is empty");
  return seeds;
}

std::string RunConfig::hash() const {
  std::ostringstream c;
  c << "benchmark=" << benchmark << "\ninstance=" << instance.string() << "\nencoder=" << encoder
    << "\nelectrons=" << electrons << "\npenalty=" << format_double(penalty) << "\nsymmetry_qubit=" << symmetry_qubit
    << "\nblocks=" << blocks << "\nrotation=" << to_string(ansatz.rotation_axis)
    << "\nentangler=" << to_string(ansatz.entangler) << "\ninitial_bits=" << (initial_bits_set ? ansatz.initial_bits : "")
    << "\nqx=" << format_double(noise.qx) << "\nqy=" << format_double(noise.qy) << "\nqz=" << format_double(noise.qz)
    << "\nstep=" << (step_set ? to_string(step) : "") << "\ncompare=";
  for (auto v : compare) c << to_string(v) << ",";
  c << "\nalpha=" << format_double(train.alpha) << "\nbeta=" << format_double(train.beta)
    << "\niterations=" << train.iterations << "\nlr0=" << format_double(train.lr0)
    << "\nclip_threshold=" << format_double(train.clip_threshold) << "\nfd_eps=" << format_double(train.fd_eps)
    << "\nmax_backtracks=" << train.max_backtracks << "\nrequire_admissible_start=" << train.require_admissible_start
    << "\nsurvey_samples=" << survey_samples << "\nsurvey_fd_eps=" << format_double(survey_fd_eps)
    << "\nsurvey_seed=" << survey_seed << "\nbound_samples=" << bound_samples << "\nepsilon=";
  for (double e : epsilons) c << format_double(e) << ",";
  c << "\nbound_seed=" << bound_seed << "\n";
  return hex64(fnv1a(c.str()));
}

RunConfig parse_run_config(std::istream& in, const std::filesystem::path& source) {
  ptree pt;
  try {
    boost::property_tree::ini_parser::read_ini(in, pt);
  } catch (const boost::property_tree::ini_parser_error& e) {
    config_error("line " + std::to_string(e.line()) + ": " + e.message());
  }
  RunConfig cfg;
  cfg.source = source;
  const auto& keys = known_keys();
  for (const auto& [section, body] : pt) {
    const auto it = keys.find(section);
    if (it == keys.end()) {
      if (body.empty()) config_error("'" + section + "' is outside any section");
      config_error("unknown section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) config_error("unknown key " + section + "." + key);
    }
  }
  const auto get = [&](const std::string& path) -> std::optional<std::string> {
    if (auto v = pt.get_optional<std::string>(path)) return trim(*v);
    return std::nullopt;
  };

  if (auto v = get("problem.benchmark")) cfg.benchmark = *v;
  if (auto v = get("problem.instance")) {
    cfg.instance = *v;
    if (cfg.instance.is_relative() && !source.empty()) cfg.instance = source.parent_path() / cfg.instance;
  }
  if (auto v = get("problem.encoder")) cfg.encoder = *v;
  if (auto v = get("problem.electrons")) cfg.electrons = to_int("problem.electrons", *v);
  if (auto v = get("problem.penalty")) cfg.penalty = to_double("problem.penalty", *v);
  if (auto v = get("problem.symmetry_qubit")) cfg.symmetry_qubit = to_int("problem.symmetry_qubit", *v);
  if (cfg.benchmark.empty() == cfg.instance.empty()) {
    config_error("problem: set exactly one of problem.benchmark and problem.instance");
  }
  if (!cfg.benchmark.empty()) {
    const auto ids = shipped_instance_ids();
    if (std::find(ids.begin(), ids.end(), cfg.benchmark) == ids.end()) {
      std::string list;
      for (const auto& id : ids) list += (list.empty() ? "" : ", ") + id;
      config_error("problem.benchmark: unknown id '" + cfg.benchmark + "' (valid: " + list + ")");
    }
  } else {
    if (cfg.encoder != "maxcut" && cfg.encoder != "vertex-cover" && cfg.encoder != "vqe") {
      config_error("problem.encoder: must be maxcut, vertex-cover or vqe when problem.instance is set");
    }
    if (!std::filesystem::exists(cfg.instance)) {
      config_error("problem.instance: file not found: " + cfg.instance.string());
    }
  }

  if (auto v = get("ansatz.blocks")) cfg.blocks = to_int("ansatz.blocks", *v);
  if (cfg.blocks < 1) config_error("ansatz.blocks: must be >= 1");
  try {
    if (auto v = get("ansatz.rotation_axis")) cfg.ansatz.rotation_axis = parse_rotation_axis(*v);
    if (auto v = get("ansatz.entangler")) cfg.ansatz.entangler = parse_entangler(*v);
  } catch (const Error& e) {
    config_error(std::string("ansatz: ") + e.what());
  }
  if (auto v = get("ansatz.initial_bits")) {
    cfg.ansatz.initial_bits = *v;
    cfg.initial_bits_set = true;
  }

  if (auto v = get("noise.rate")) cfg.noise = NoiseModel::uniform(to_double("noise.rate", *v));
  if (auto v = get("noise.qx")) cfg.noise.qx = to_double("noise.qx", *v);
  if (auto v = get("noise.qy")) cfg.noise.qy = to_double("noise.qy", *v);
  if (auto v = get("noise.qz")) cfg.noise.qz = to_double("noise.qz", *v);
  for (const auto& [name, q] : {std::pair{"noise.qx", cfg.noise.qx}, {"noise.qy", cfg.noise.qy},
                                {"noise.qz", cfg.noise.qz}}) {
    if (q < 0.0) config_error(std::string(name) + ": must be >= 0");
  }
  if (cfg.noise.qx + cfg.noise.qy + cfg.noise.qz > 1.0) {
    config_error("noise.qx + noise.qy + noise.qz = " + format_double(cfg.noise.qx + cfg.noise.qy + cfg.noise.qz) +
                 " exceeds 1");
  }

  if (auto v = get("cost.step")) {
    cfg.step = to_cost("cost.step", *v);
    cfg.step_set = true;
  }
  if (auto v = get("cost.compare")) {
    cfg.compare.clear();
    for (const auto& item : split_list(*v)) cfg.compare.push_back(to_cost("cost.compare", item));
    if (cfg.compare.empty()) config_error("cost.compare: the list is empty");
  }
  if (auto v = get("cost.alpha")) cfg.train.alpha = to_double("cost.alpha", *v);
  if (auto v = get("cost.beta")) cfg.train.beta = to_double("cost.beta", *v);
  if (!(cfg.train.alpha > 0.0)) config_error("cost.alpha: must be > 0");
  if (cfg.train.beta < 0.0) config_error("cost.beta: must be >= 0");

  if (auto v = get("train.iterations")) cfg.train.iterations = to_unsigned("train.iterations", *v);
  if (auto v = get("train.lr0")) cfg.train.lr0 = to_double("train.lr0", *v);
  if (auto v = get("train.clip_threshold")) cfg.train.clip_threshold = to_double("train.clip_threshold", *v);
  if (auto v = get("train.fd_eps")) cfg.train.fd_eps = to_double("train.fd_eps", *v);
  if (auto v = get("train.threads")) cfg.train.threads = static_cast<unsigned>(to_unsigned("train.threads", *v));
  if (auto v = get("train.max_backtracks")) cfg.train.max_backtracks = to_int("train.max_backtracks", *v);
  if (auto v = get("train.require_admissible_start")) {
    cfg.train.require_admissible_start = to_bool("train.require_admissible_start", *v);
  }
  if (cfg.train.iterations < 1) config_error("train.iterations: must be >= 1");
  if (cfg.train.lr0 < 0.0) config_error("train.lr0: must be >= 0");
  if (!(cfg.train.clip_threshold > 0.0)) config_error("train.clip_threshold: must be > 0");
  if (!(cfg.train.fd_eps > 0.0)) config_error("train.fd_eps: must be > 0");
  if (cfg.train.threads < 1) config_error("train.threads: must be >= 1");

  if (auto v = get("survey.samples")) cfg.survey_samples = to_unsigned("survey.samples", *v);
  if (auto v = get("survey.fd_eps")) cfg.survey_fd_eps = to_double("survey.fd_eps", *v);
  if (auto v = get("survey.seed")) cfg.survey_seed = to_unsigned("survey.seed", *v);
  if (cfg.survey_samples < 1) config_error("survey.samples: must be >= 1");
  if (!(cfg.survey_fd_eps > 0.0)) config_error("survey.fd_eps: must be > 0");

  if (auto v = get("bounds.samples")) cfg.bound_samples = to_unsigned("bounds.samples", *v);
  if (auto v = get("bounds.seed")) cfg.bound_seed = to_unsigned("bounds.seed", *v);
  if (auto v = get("bounds.epsilon")) {
    cfg.epsilons.clear();
    for (const auto& item : split_list(*v)) {
      const double e = to_double("bounds.epsilon", item);
      if (!(e > 0.0)) config_error("bounds.epsilon: values must be > 0");
      cfg.epsilons.push_back(e);
    }
    if (cfg.epsilons.empty()) config_error("bounds.epsilon: the list is empty");
  }

  if (auto v = get("output.dir")) {
    cfg.output_dir = *v;
    if (cfg.output_dir.is_relative() && !source.empty()) {
      // Relative output directories are taken from the working directory.
      cfg.output_dir = std::filesystem::current_path() / cfg.output_dir;
    }
  }
  if (auto v = get("output.seeds")) cfg.seeds = parse_seed_list(*v);
  if (auto v = get("output.parallel")) cfg.parallel = static_cast<unsigned>(to_unsigned("output.parallel", *v));
  if (cfg.parallel < 1) config_error("output.parallel: must be >= 1");
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config file " + path.string());
  return parse_run_config(in, path);
}

ProblemInstance resolve_instance(const RunConfig& cfg) {
  if (!cfg.benchmark.empty()) return shipped_instance(cfg.benchmark);
  const std::string name = cfg.instance.stem().string();
  if (cfg.encoder == "maxcut") return encode_maxcut(Graph::load(cfg.instance), name);
  if (cfg.encoder == "vertex-cover") {
    return encode_vertex_cover(Graph::load(cfg.instance), cfg.penalty, cfg.symmetry_qubit, name);
  }
  return load_vqe_hamiltonian(cfg.instance, cfg.electrons, name);
}

AnsatzSpec resolve_ansatz(const RunConfig& cfg, const ProblemInstance& p) {
  HeaOptions opts = cfg.ansatz;
  if (!cfg.initial_bits_set) opts.initial_bits = p.initial_bits;
  return build_hea(p.num_qubits, cfg.blocks, opts);
}

std::filesystem::path train_csv_path(const RunConfig& cfg, CostVariant cost, std::uint64_t seed) {
  return cfg.output_dir / (to_string(cost) + "_seed" + std::to_string(seed) + ".csv");
}

std::string describe_plan(const RunConfig& cfg, const std::string& command) {
  const Prepared prep = prepare(cfg);
  const auto& p = prep.problem;
  std::ostringstream out;
  out << "command: " << command << "\n";
  out << "config hash: " << cfg.hash() << "\n";
  out << "problem: " << p.name << " (" << p.num_qubits << " qubits, subspace " << p.subspace.origin() << ", dim "
      << p.subspace.dim() << ", shift " << format_double(p.shift) << ")\n";
  out << "ansatz: " << prep.ansatz.blocks() << " blocks, " << prep.ansatz.parameter_count() << " parameters, rotation "
      << to_string(prep.ansatz.options().rotation_axis) << ", entangler " << to_string(prep.ansatz.options().entangler)
      << ", input " << (prep.ansatz.options().initial_bits.empty() ? "all zeros" : prep.ansatz.options().initial_bits)
      << "\n";
  out << "noise: qx " << format_double(cfg.noise.qx) << ", qy " << format_double(cfg.noise.qy) << ", qz "
      << format_double(cfg.noise.qz) << " (q = " << format_double(noise_strength(cfg.noise)) << ")\n";
  if (command == "run" || command == "compare") {
    out << "costs:";
    if (command == "run" && cfg.step_set) {
      out << " " << to_string(cfg.step);
    } else {
      for (auto c : cfg.compare) out << " " << to_string(c);
    }
    out << " (alpha " << format_double(cfg.train.alpha) << ", beta " << format_double(cfg.train.beta) << ")\n";
    out << "train: " << cfg.train.iterations << " iterations, lr0 " << format_double(cfg.train.lr0) << ", clip "
        << format_double(cfg.train.clip_threshold) << ", fd_eps " << format_double(cfg.train.fd_eps) << "\n";
    out << "seeds:";
    for (auto s : cfg.seeds) out << " " << s;
    out << "\n";
  } else if (command == "survey") {
    out << "survey: " << cfg.survey_samples << " samples, fd_eps " << format_double(cfg.survey_fd_eps) << ", seed "
        << cfg.survey_seed << "\n";
  } else {
    out << "bounds: " << cfg.bound_samples << " samples per claim, epsilon";
    for (double e : cfg.epsilons) out << " " << format_double(e);
    out << ", seed " << cfg.bound_seed << "\n";
  }
  out << "output: " << cfg.output_dir.string() << " (parallel " << cfg.parallel << ")\n";
  return out.str();
}

int command_run(const RunConfig& cfg, std::ostream& log) {
  const auto t0 = std::chrono::steady_clock::now();
  const Prepared prep = prepare(cfg);
  const std::vector<CostVariant> costs = cfg.step_set ? std::vector<CostVariant>{cfg.step} : cfg.compare;
  guard_existing(cfg.output_dir / "run_summary.json", cfg.hash());
  const auto records = train_all(cfg, prep, costs, log);
  json per_cost = json::array();
  for (std::size_t ci = 0; ci < costs.size(); ++ci) {
    json runs = json::array();
    std::vector<double> c1, metric, quality;
    for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
      const auto& r = records[ci][i];
      runs.push_back(record_json(r, cfg.seeds[i], train_csv_path(cfg, costs[ci], cfg.seeds[i])));
      c1.push_back(r.final_c1);
      metric.push_back(r.final_metric);
      quality.push_back(r.parameter_quality);
    }
    per_cost.push_back({{"cost", to_string(costs[ci])},
                        {"runs", runs},
                        {"mean",
                         {{"final_c1", stats_of(c1).mean},
                          {"final_metric", stats_of(metric).mean},
                          {"parameter_quality", stats_of(quality).mean}}}});
  }
  json summary = {{"command", "run"},
                  {"benchmark", prep.problem.name},
                  {"metric", metric_name(prep.problem)},
                  {"costs", per_cost}};
  summary["provenance"] = provenance(cfg, seconds_since(t0));
  write_text(cfg.output_dir / "run_summary.json", summary.dump(2) + "\n");
  log << "wrote " << (cfg.output_dir / "run_summary.json").string() << "\n";
  return 0;
}

int command_compare(const RunConfig& cfg, std::ostream& log) {
  const auto t0 = std::chrono::steady_clock::now();
  const Prepared prep = prepare(cfg);
  guard_existing(cfg.output_dir / "compare_summary.json", cfg.hash());
  const auto records = train_all(cfg, prep, cfg.compare, log);
  const std::string metric = metric_name(prep.problem);
  json table = json::array();
  std::vector<double> means;
  for (std::size_t ci = 0; ci < cfg.compare.size(); ++ci) {
    json per_seed = json::array();
    std::vector<double> m, q, c1;
    for (std::size_t si = 0; si < cfg.seeds.size(); ++si) {
      const auto& r = records[ci][si];
      per_seed.push_back(record_json(r, cfg.seeds[si], train_csv_path(cfg, cfg.compare[ci], cfg.seeds[si])));
      m.push_back(r.final_metric);
      q.push_back(r.parameter_quality);
      c1.push_back(r.final_c1);
    }
    json row = {{"cost", to_string(cfg.compare[ci])},
                {"per_seed", per_seed},
                {metric, stats_of(m).mean},
                {"parameter_quality", stats_of(q).mean},
                {"final_c1", stats_of(c1).mean}};
    if (cfg.seeds.size() > 1) {
      row[metric + "_std"] = stats_of(m).stddev;
      row["parameter_quality_std"] = stats_of(q).stddev;
    }
    means.push_back(stats_of(m).mean);
    table.push_back(row);
  }
  json summary = {{"command", "compare"},
                  {"benchmark", prep.problem.name},
                  {"metric", metric},
                  {"seeds", cfg.seeds},
                  {"table", table}};
  if (cfg.compare.size() == 2 && means[0] > 0.0) summary["metric_ratio"] = means[1] / means[0];
  summary["provenance"] = provenance(cfg, seconds_since(t0));
  write_text(cfg.output_dir / "compare_summary.json", summary.dump(2) + "\n");
  for (std::size_t ci = 0; ci < cfg.compare.size(); ++ci) {
    log << to_string(cfg.compare[ci]) << ": mean " << metric << " " << format_double(means[ci]) << "\n";
  }
  log << "wrote " << (cfg.output_dir / "compare_summary.json").string() << "\n";
  return 0;
}

int command_survey(const RunConfig& cfg, std::ostream& log) {
  const auto t0 = std::chrono::steady_clock::now();
  const Prepared prep = prepare(cfg);
  const std::string hash = cfg.hash();
  const auto csv_path = cfg.output_dir / "survey.csv";
  guard_existing(csv_path, hash);
  guard_existing(cfg.output_dir / "survey_summary.json", hash);
  SurveyOptions opts;
  opts.fd_eps = cfg.survey_fd_eps;
  opts.threads = cfg.parallel;
  const SurveyResult r =
      gradient_norm_survey(prep.problem, prep.ansatz, cfg.noise, cfg.survey_samples, cfg.survey_seed, opts);
  std::ostringstream csv;
  csv << "# config_hash=" << hash << "\n";
  csv << "sample,c1_grad_l2,c2_grad_l2,ratio,applicable\n";
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const auto& s = r.samples[i];
    const double ratio = s.applicable ? s.candidate_norm / s.baseline_norm : std::nan("");
    csv << i << "," << format_double(s.baseline_norm) << "," << format_double(s.candidate_norm) << ","
        << format_double(ratio) << "," << (s.applicable ? 1 : 0) << "\n";
  }
  write_text(csv_path, csv.str());
  json summary = {{"command", "survey"},
                  {"benchmark", prep.problem.name},
                  {"samples", cfg.survey_samples},
                  {"applicable", r.applicable},
                  {"mean_ratio", r.mean_ratio},
                  {"median_ratio", r.median_ratio},
                  {"ratio_of_means", r.ratio_of_means}};
  if (r.inapplicable_reason) summary["inapplicable_reason"] = *r.inapplicable_reason;
  summary["provenance"] = provenance(cfg, seconds_since(t0));
  write_text(cfg.output_dir / "survey_summary.json", summary.dump(2) + "\n");
  if (r.inapplicable_reason) {
    log << "survey not applicable: " << *r.inapplicable_reason << "\n";
  } else {
    log << "mean |grad C2| / |grad C1| over " << r.applicable << " samples: " << format_double(r.mean_ratio) << "\n";
  }
  return 0;
}

int command_bounds_check(const RunConfig& cfg, const std::string& claim, std::ostream& log) {
  const auto& ids = claim_ids();
  if (!claim.empty() && std::find(ids.begin(), ids.end(), claim) == ids.end()) {
    std::string list;
    for (const auto& id : ids) list += (list.empty() ? "" : ", ") + id;
    config_error("unknown claim '" + claim + "' (valid: " + list + ")");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const Prepared prep = prepare(cfg);
  const TruncatedObservables t = build_truncated_observables(prep.problem.observable, prep.problem.subspace);
  const std::string hash = cfg.hash();
  const std::vector<std::string> selected = claim.empty() ? ids : std::vector<std::string>{claim};
  for (const auto& id : selected) guard_existing(cfg.output_dir / ("bounds_" + id + ".json"), hash);

  const std::size_t samples = cfg.bound_samples;
  const std::uint64_t seed = cfg.bound_seed;
  const auto amplification_at = [&](double eps) {
    const int l0 = amplification_depth(t, noise_strength(cfg.noise), eps);
    const int blocks = l0 < 0 ? cfg.blocks : std::max(cfg.blocks, 2 * l0 + 2);
    HeaOptions opts = prep.ansatz.options();
    return check_amplification(build_hea(prep.problem.num_qubits, blocks, opts), cfg.noise, t, samples, eps, seed);
  };

  std::vector<json> results(selected.size());
  std::vector<bool> passed(selected.size(), false);
  parallel_for(selected.size(), cfg.parallel, [&](std::size_t i) {
    const std::string& id = selected[i];
    BoundReport r;
    json extra = json::object();
    if (id == "state-decay") {
      r = check_state_decay(prep.ansatz, cfg.noise, samples, seed);
    } else if (id == "gradient-bound-c0") {
      r = check_gradient_bound_c0(prep.ansatz, cfg.noise, prep.problem.observable, samples, seed);
    } else if (id == "gradient-bound-c1") {
      r = check_gradient_bound_c1(prep.ansatz, cfg.noise, t, samples, seed);
    } else if (id == "amplification") {
      r = amplification_at(cfg.epsilons.front());
      json sweep = json::array();
      bool all = r.passed();
      for (std::size_t k = 1; k < cfg.epsilons.size(); ++k) {
        const BoundReport s = amplification_at(cfg.epsilons[k]);
        all = all && s.passed();
        sweep.push_back(report_json(s));
      }
      extra["sensitivity"] = sweep;
      if (!all) ++r.violations;
    } else if (id == "dominating-term") {
      r = check_dominating_term(samples, 4, seed);
    } else if (id == "singularity-profile") {
      r = check_singularity_profile(t, 50);
    } else if (id == "solution-space") {
      r = check_solution_space(t, samples, seed);
    } else if (id == "traceless-derivative") {
      r = check_traceless_derivative(prep.ansatz, cfg.noise, std::min<std::size_t>(samples, 5), seed);
    } else {
      r = check_gradient_formulas(samples, seed);
    }
    json j = report_json(r);
    j.update(extra);
    j["config_hash"] = hash;
    results[i] = std::move(j);
    passed[i] = r.passed();
  });

  bool all_passed = true;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    results[i]["wall_time_s"] = seconds_since(t0);
    write_text(cfg.output_dir / ("bounds_" + selected[i] + ".json"), results[i].dump(2) + "\n");
    log << selected[i] << ": " << (passed[i] ? "ok" : "VIOLATED") << " (" << results[i]["instances"].get<std::size_t>()
        << " instances, " << results[i]["inapplicable"].get<std::size_t>() << " inapplicable, "
        << results[i]["violations"].get<std::size_t>() << " violations)\n";
    all_passed = all_passed && passed[i];
  }
  return all_passed ? 0 : 2;
}

}  // namespace vqt
