// homophony: command-line pipeline from raw lexicon tables to entropy
// estimates and null-hypothesis tests.
//
// Exit codes: 0 success, 1 other failure, 2 usage error, 3 data error,
// 4 enumeration budget exhausted.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "homophony/data.h"
#include "homophony/entropy.h"
#include "homophony/io.h"
#include "homophony/lm.h"
#include "homophony/ngram.h"
#include "homophony/nulltest.h"

namespace {

using nlohmann::json;
using namespace homophony;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Paths {
  std::string input, output, lexicon, alphabet, manifest, model, probe, table, words;
  std::vector<std::string> models;  // report: name=path
};

struct RunConfig {
  std::uint64_t seed = 0;
  double delta = 1e-8;
  std::size_t max_len = 50;
  std::size_t S = 1000;
  std::size_t mc_shannon_samples = 100000;
  std::size_t node_budget = 50'000'000;
  std::string mode = "mono";
  std::size_t threads = 0;  // 0: all hardware threads
  std::optional<std::size_t> lexicon_size;
  int order = 5;
  double lambda = 0.01;
  std::vector<double> ratios{0.8, 0.1, 0.1};
  std::string split_unit = "types";
  std::string split_name = "test";
  std::vector<int> family_n{9, 99, 999};
  double k_step = 0.01;
  Paths paths;
};

json to_json(const RunConfig& c) {
  const Paths& p = c.paths;
  return {{"seed", c.seed},
          {"delta", c.delta},
          {"max_len", c.max_len},
          {"S", c.S},
          {"mc_shannon_samples", c.mc_shannon_samples},
          {"node_budget", c.node_budget},
          {"mode", c.mode},
          {"threads", c.threads},
          {"lexicon_size", c.lexicon_size ? json(*c.lexicon_size) : json(nullptr)},
          {"order", c.order},
          {"lambda", c.lambda},
          {"ratios", c.ratios},
          {"split_unit", c.split_unit},
          {"split", c.split_name},
          {"family_n", c.family_n},
          {"k_step", c.k_step},
          {"paths",
           {{"input", p.input},
            {"output", p.output},
            {"lexicon", p.lexicon},
            {"alphabet", p.alphabet},
            {"manifest", p.manifest},
            {"model", p.model},
            {"models", p.models},
            {"probe", p.probe},
            {"table", p.table},
            {"words", p.words}}}};
}

// Every key present in `j` replaces the flag value.
void apply_overrides(RunConfig& c, const json& j) {
  if (!j.is_object()) throw UsageError("config file must hold a JSON object");
  const json known = to_json(c);
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw UsageError("unknown config key '" + key + "'");
  }
  try {
    auto take = [&](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    take("seed", c.seed);
    take("delta", c.delta);
    take("max_len", c.max_len);
    take("S", c.S);
    take("mc_shannon_samples", c.mc_shannon_samples);
    take("node_budget", c.node_budget);
    take("mode", c.mode);
    take("threads", c.threads);
    if (j.contains("lexicon_size")) {
      if (j["lexicon_size"].is_null()) {
        c.lexicon_size.reset();
      } else {
        c.lexicon_size = j["lexicon_size"].get<std::size_t>();
      }
    }
    take("order", c.order);
    take("lambda", c.lambda);
    take("ratios", c.ratios);
    take("split_unit", c.split_unit);
    take("split", c.split_name);
    take("family_n", c.family_n);
    take("k_step", c.k_step);
    if (j.contains("paths")) {
      const json& p = j["paths"];
      if (!p.is_object()) throw UsageError("config 'paths' must be an object");
      for (const auto& [key, value] : p.items()) {
        if (!known["paths"].contains(key)) throw UsageError("unknown config path '" + key + "'");
      }
      auto path = [&](const char* key, auto& field) {
        if (p.contains(key)) p.at(key).get_to(field);
      };
      path("input", c.paths.input);
      path("output", c.paths.output);
      path("lexicon", c.paths.lexicon);
      path("alphabet", c.paths.alphabet);
      path("manifest", c.paths.manifest);
      path("model", c.paths.model);
      path("models", c.paths.models);
      path("probe", c.paths.probe);
      path("table", c.paths.table);
      path("words", c.paths.words);
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("config file: ") + e.what());
  }
}

void validate(const RunConfig& c) {
  if (!(c.delta > 0.0 && c.delta <= 1.0)) throw UsageError("delta must lie in (0, 1]");
  if (c.max_len < 1) throw UsageError("max_len must be >= 1");
  if (c.S < 1) throw UsageError("S must be >= 1");
  if (c.mc_shannon_samples < 1) throw UsageError("mc_shannon_samples must be >= 1");
  if (c.node_budget < 1) throw UsageError("node_budget must be >= 1");
  if (c.mode != "mono" && c.mode != "all") throw UsageError("mode must be mono or all");
  if (c.lexicon_size && *c.lexicon_size < 2) throw UsageError("lexicon_size must be >= 2");
  if (c.order < 1) throw UsageError("order must be >= 1");
  if (!(c.lambda > 0.0)) throw UsageError("lambda must be > 0");
  if (c.ratios.size() != 3) throw UsageError("ratios takes three values");
  if (c.split_unit != "types" && c.split_unit != "entries") {
    throw UsageError("split-unit must be types or entries");
  }
  if (c.split_name != "train" && c.split_name != "val" && c.split_name != "test") {
    throw UsageError("split must be train, val or test");
  }
  for (int n : c.family_n) {
    if (n < 1) throw UsageError("family n must be >= 1");
  }
  if (!(c.k_step > 0.0 && c.k_step <= 1.0)) throw UsageError("k-step must lie in (0, 1]");
}

std::size_t thread_count(const RunConfig& c) {
  if (c.threads > 0) return c.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

const std::string& require(const std::string& path, const char* flag) {
  if (path.empty()) throw UsageError(std::string("missing required option ") + flag);
  return path;
}

void emit(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(j, path);
  }
}

json bits_json(const Bits& b) {
  if (b.is_infinite()) return "no_collision";
  return b.value();
}

std::string bits_display(const Bits& b) {
  if (b.is_infinite()) return "∞ (no collisions)";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5f bits", b.value());
  return buf;
}

json estimate_json(const EntropyEstimate& e) {
  const SupportAccumulators& a = e.accumulators;
  return {{"H2_hat", e.value},
          {"bound_width", e.bound_width},
          {"H2_lower", e.value - e.bound_width},
          {"xi", a.xi},
          {"eta", a.eta},
          {"eta_compensated", a.eta_compensated},
          {"support_size", a.count},
          {"truncated_by_length", a.truncated_by_length},
          {"expansions", a.expansions}};
}

json shannon_json(const ShannonEstimate& s) {
  return {{"H1", s.value},
          {"standard_error", s.standard_error},
          {"samples", s.samples},
          {"overflow_resamples", s.overflow_resamples}};
}

struct Scored {
  CrossEntropy ce;
  std::size_t skipped = 0;  // words with symbols outside the model alphabet
};

Scored score_forms(const PhonotacticModel& model, const std::vector<std::string>& forms) {
  Scored out;
  std::vector<Wordform> words;
  for (const auto& f : forms) {
    try {
      words.push_back(Wordform::parse(f, model.alphabet()));
    } catch (const DataError&) {
      ++out.skipped;
    }
  }
  if (words.empty()) throw DataError("no scorable words (all contain unknown symbols)");
  out.ce = cross_entropy(model, words);
  return out;
}

std::vector<std::string> manifest_forms(const json& manifest, const std::string& part) {
  try {
    return manifest.at(part).get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw DataError("split manifest: " + std::string(e.what()));
  }
}

std::vector<std::string> lexicon_forms(const Lexicon& lex) {
  std::vector<std::string> out;
  for (const auto& e : lex.entries) out.push_back(e.form.to_string(lex.alphabet));
  return out;
}

json scored_json(const Scored& s) {
  return {{"bits_per_word", s.ce.bits_per_word},
          {"bits_per_phone", s.ce.bits_per_phone},
          {"words", s.ce.words},
          {"skipped_unknown_symbol", s.skipped}};
}

NullTestOptions null_options(const RunConfig& c) {
  NullTestOptions o;
  o.samples = c.S;
  o.seed = c.seed;
  o.max_len = c.max_len;
  o.threads = thread_count(c);
  o.lexicon_size = c.lexicon_size;
  return o;
}

EnumerationOptions enumeration_options(const RunConfig& c) {
  return {c.delta, c.max_len, c.node_budget};
}

// ---------------------------------------------------------------------------

int cmd_ingest(const RunConfig& c) {
  std::optional<Alphabet> alphabet;
  if (!c.paths.alphabet.empty()) alphabet = read_alphabet(c.paths.alphabet);
  const IngestResult r = ingest(require(c.paths.input, "--input"), alphabet,
                                c.mode == "mono" ? IngestMode::kMono : IngestMode::kAll);
  write_lexicon(r.lexicon, require(c.paths.output, "--output"));
  std::cout << json{{"config", to_json(c)},
                    {"report", r.report.to_json()},
                    {"alphabet", alphabet_json(r.lexicon.alphabet)}}
                   .dump(2)
            << "\n";
  return 0;
}

int cmd_split(const RunConfig& c) {
  const Lexicon lex = read_lexicon(require(c.paths.lexicon, "--lexicon"));
  SplitSpec spec;
  std::copy(c.ratios.begin(), c.ratios.end(), spec.ratios.begin());
  spec.seed = c.seed;
  spec.unit = c.split_unit == "types" ? SplitUnit::kTypes : SplitUnit::kEntries;
  const Split s = split(lex, spec);
  write_json_file(split_manifest(s, spec, lex.alphabet), require(c.paths.output, "--output"));
  std::cout << json{{"config", to_json(c)},
                    {"sizes", {{"train", s.train.size()}, {"val", s.val.size()}, {"test", s.test.size()}}}}
                   .dump(2)
            << "\n";
  return 0;
}

int cmd_train_ngram(const RunConfig& c) {
  const json manifest = read_json_file(require(c.paths.manifest, "--manifest"));
  Alphabet alphabet = c.paths.alphabet.empty()
                          ? Alphabet(manifest.at("alphabet").at("phones").get<std::vector<std::string>>())
                          : read_alphabet(c.paths.alphabet);
  std::vector<Wordform> train;
  for (const auto& f : manifest_forms(manifest, "train")) train.push_back(Wordform::parse(f, alphabet));
  const NGramModel model = NGramModel::train(train, c.order, c.lambda, alphabet);
  model.save(require(c.paths.output, "--output"));
  const Scored tr = score_forms(model, manifest_forms(manifest, "train"));
  std::cout << json{{"config", to_json(c)}, {"train", scored_json(tr)}}.dump(2) << "\n";
  return 0;
}

int cmd_eval_lm(const RunConfig& c) {
  const ModelPtr model = load_model(require(c.paths.model, "--model"));
  json out{{"config", to_json(c)}, {"model_kind", model->kind()}};
  std::vector<std::string> forms;
  if (!c.paths.manifest.empty()) {
    forms = manifest_forms(read_json_file(c.paths.manifest), c.split_name);
  } else if (!c.paths.lexicon.empty()) {
    forms = lexicon_forms(read_lexicon(c.paths.lexicon));
  }
  if (!forms.empty()) out["cross_entropy"] = scored_json(score_forms(*model, forms));

  if (!c.paths.probe.empty()) {
    std::ifstream probe(c.paths.probe);
    if (!probe) throw DataError("cannot open " + c.paths.probe);
    std::size_t n = 0;
    double max_diff = 0.0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(probe, line)) {
      ++line_no;
      if (line.empty()) continue;
      try {
        const json j = json::parse(line);
        const std::string form = j.at("form").get<std::string>();
        std::vector<int> phones;
        if (!form.empty()) phones = Wordform::parse(form, model->alphabet()).phones();
        const double diff = std::abs(model->log_prob(phones) - j.at("log2_prob").get<double>());
        max_diff = std::max(max_diff, diff);
        ++n;
      } catch (const json::exception& e) {
        throw DataError(c.paths.probe + " line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    out["probe"] = {{"words", n}, {"max_abs_diff_bits", max_diff}, {"within_1e-4", max_diff <= 1e-4}};
  }
  if (!out.contains("cross_entropy") && !out.contains("probe")) {
    throw UsageError("eval-lm needs --manifest, --lexicon or --probe");
  }
  emit(out, c.paths.output);
  return 0;
}

int cmd_lexicon_entropy(const RunConfig& c) {
  const Lexicon lex = read_lexicon(require(c.paths.lexicon, "--lexicon"));
  const Bits r = sample_renyi(lex);
  std::cerr << "R(W) = " << bits_display(r) << "\n";
  emit({{"config", to_json(c)},
        {"M", lex.size()},
        {"types", multiplicity_table(lex).size()},
        {"R", bits_json(r)},
        {"R_display", bits_display(r)}},
       c.paths.output);
  return 0;
}

int cmd_model_entropy(const RunConfig& c) {
  const ModelPtr model = load_model(require(c.paths.model, "--model"));
  const EntropyEstimate h2 = truncated_h2(*model, enumeration_options(c));
  Rng rng(c.seed);
  const ShannonEstimate h1 = mc_shannon(*model, c.mc_shannon_samples, rng, c.max_len);
  emit({{"config", to_json(c)},
        {"model_kind", model->kind()},
        {"H2", estimate_json(h2)},
        {"H1", shannon_json(h1)}},
       c.paths.output);
  return 0;
}

int cmd_nulltest(const RunConfig& c) {
  const ModelPtr model = load_model(require(c.paths.model, "--model"));
  const Lexicon lex = read_lexicon(require(c.paths.lexicon, "--lexicon"));
  const NullTestResult r = null_test(*model, lex, null_options(c));
  json out = to_json(r);
  out["config"] = to_json(c);
  out["observed_R_display"] = bits_display(r.observed_R);
  emit(out, c.paths.output);
  return 0;
}

int cmd_enumerate(const RunConfig& c) {
  const ModelPtr model = load_model(require(c.paths.model, "--model"));
  std::ofstream words(require(c.paths.words, "--words"));
  if (!words) throw DataError("cannot write " + c.paths.words);
  const Alphabet& a = model->alphabet();
  std::string form;
  const SupportAccumulators acc =
      enumerate_support(*model, enumeration_options(c), [&](std::span<const int> w, double lp) {
        form.clear();
        for (std::size_t i = 0; i < w.size(); ++i) {
          if (i) form += ' ';
          form += a.label(w[i]);
        }
        words << json{{"form", form}, {"log2_prob", lp}}.dump() << "\n";
      });
  json summary{{"config", to_json(c)},
               {"support_size", acc.count},
               {"xi", acc.xi},
               {"eta", acc.eta},
               {"truncated_by_length", acc.truncated_by_length},
               {"expansions", acc.expansions}};
  if (acc.count > 0) {
    summary["H2_hat"] = -acc.log2_eta;
    summary["bound_width"] = truncation_bound(acc.xi, acc.eta, acc.delta);
  }
  emit(summary, c.paths.output);
  return 0;
}

int cmd_family_curves(const RunConfig& c) {
  std::ostringstream csv;
  csv << "k,n,H1,H2\n";
  const int steps = static_cast<int>(std::lround(1.0 / c.k_step));
  char buf[128];
  for (int n : c.family_n) {
    for (int i = 0; i <= steps; ++i) {
      const double k = std::min(1.0, i * c.k_step);
      const FiniteDistribution d = family_distribution(k, n);
      std::snprintf(buf, sizeof buf, "%.6g,%d,%.10f,%.10f\n", k, n, finite_renyi(d, 1.0) + 0.0,
                    finite_renyi(d, 2.0) + 0.0);  // + 0.0 folds -0 into 0
      csv << buf;
    }
  }
  if (c.paths.output.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(c.paths.output);
    if (!out) throw DataError("cannot write " + c.paths.output);
    out << csv.str();
  }
  return 0;
}

int cmd_report(const RunConfig& c) {
  const Lexicon lex = read_lexicon(require(c.paths.lexicon, "--lexicon"));
  const json manifest = read_json_file(require(c.paths.manifest, "--manifest"));
  if (c.paths.models.empty()) throw UsageError("report needs at least one --model name=path");
  const Bits observed = sample_renyi(lex);

  json rows = json::array();
  std::ostringstream table;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-12s %8s %8s %8s %8s %10s\n", "", "Train", "Test", "H1", "H2",
                "R(W)");
  table << buf;
  auto cell = [](double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2f", v);
    return std::string(b);
  };

  for (const std::string& spec : c.paths.models) {
    const auto eq = spec.find('=');
    const std::string path = eq == std::string::npos ? spec : spec.substr(eq + 1);
    const ModelPtr model = load_model(path);
    const std::string name = eq == std::string::npos ? model->kind() : spec.substr(0, eq);

    const Scored train = score_forms(*model, manifest_forms(manifest, "train"));
    const Scored test = score_forms(*model, manifest_forms(manifest, "test"));
    Rng rng(c.seed);
    const ShannonEstimate h1 = mc_shannon(*model, c.mc_shannon_samples, rng, c.max_len);
    const EntropyEstimate h2 = truncated_h2(*model, enumeration_options(c));
    const NullTestResult nt = null_test(*model, lex, null_options(c));

    json nt_json = to_json(nt);
    nt_json.erase("samples_R");
    rows.push_back({{"name", name},
                    {"path", path},
                    {"kind", model->kind()},
                    {"train", scored_json(train)},
                    {"test", scored_json(test)},
                    {"H1", shannon_json(h1)},
                    {"H2", estimate_json(h2)},
                    {"R_mean", nt.mean_R ? json(*nt.mean_R) : json("no_collision")},
                    {"star", nt.reject},
                    {"nulltest", nt_json}});

    const std::string r_cell = (nt.mean_R ? cell(*nt.mean_R) : std::string("inf")) + (nt.reject ? "*" : " ");
    std::snprintf(buf, sizeof buf, "%-12s %8s %8s %8s %8s %10s\n", name.c_str(),
                  cell(train.ce.bits_per_word).c_str(), cell(test.ce.bits_per_word).c_str(),
                  cell(h1.value).c_str(), cell(h2.value).c_str(), r_cell.c_str());
    table << buf;
  }
  const std::string lex_cell = (observed.is_finite() ? cell(observed.value()) : std::string("inf")) + " ";
  std::snprintf(buf, sizeof buf, "%-12s %8s %8s %8s %8s %10s\n", "Lexicon", "-", "-", "-", "-",
                lex_cell.c_str());
  table << buf;
  table << "* null hypothesis rejected (min tail probability < " << kTailThreshold << ")\n";

  emit({{"config", to_json(c)},
        {"lexicon", {{"M", lex.size()}, {"R", bits_json(observed)}, {"R_display", bits_display(observed)}}},
        {"rows", rows},
        {"table", table.str()}},
       c.paths.output);
  if (!c.paths.table.empty()) {
    std::ofstream out(c.paths.table);
    if (!out) throw DataError("cannot write " + c.paths.table);
    out << table.str();
  } else if (!c.paths.output.empty()) {
    std::cout << table.str();
  }
  return 0;
}

// ---------------------------------------------------------------------------

void add_seed(CLI::App* s, RunConfig& c) { s->add_option("--seed", c.seed, "random seed"); }
void add_threads(CLI::App* s, RunConfig& c) {
  s->add_option("--threads", c.threads, "thread cap (0 = all cores)");
}
void add_enumeration(CLI::App* s, RunConfig& c) {
  s->add_option("--delta", c.delta, "support probability threshold");
  s->add_option("--max-len", c.max_len, "maximum word length in phones");
  s->add_option("--node-budget", c.node_budget, "enumeration expansion budget");
}
void add_null(CLI::App* s, RunConfig& c) {
  s->add_option("--S", c.S, "number of sampled lexicons")->option_text("INT");
  s->add_option("--lexicon-size", c.lexicon_size, "size of sampled lexicons (default: observed)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homophony in lexicons: sample and model Renyi entropies, null tests"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "homophony 1.0");
  RunConfig c;
  std::string config_path;
  app.add_option("--config", config_path, "JSON config; its keys override flags");
  app.fallthrough();

  auto* s_ingest = app.add_subcommand("ingest", "normalized TSV -> canonical lexicon");
  s_ingest->add_option("--input", c.paths.input, "normalized TSV");
  s_ingest->add_option("--output", c.paths.output, "lexicon JSON lines");
  s_ingest->add_option("--alphabet", c.paths.alphabet, "alphabet JSON (default: inferred)");
  s_ingest->add_option("--mode", c.mode, "mono or all");

  auto* s_split = app.add_subcommand("split", "seeded train/val/test split");
  s_split->add_option("--lexicon", c.paths.lexicon, "lexicon JSON lines");
  s_split->add_option("--output", c.paths.output, "split manifest JSON");
  s_split->add_option("--ratios", c.ratios, "train val test ratios")->expected(3)->delimiter(',');
  s_split->add_option("--split-unit", c.split_unit, "types or entries");
  add_seed(s_split, c);

  auto* s_train = app.add_subcommand("train-ngram", "train a smoothed n-gram model");
  s_train->add_option("--manifest", c.paths.manifest, "split manifest JSON");
  s_train->add_option("--alphabet", c.paths.alphabet, "alphabet JSON (default: manifest's)");
  s_train->add_option("--order", c.order, "n-gram order");
  s_train->add_option("--lambda", c.lambda, "additive smoothing constant");
  s_train->add_option("--output", c.paths.output, "model JSON");

  auto* s_eval = app.add_subcommand("eval-lm", "per-word cross-entropy and probe check");
  s_eval->add_option("--model", c.paths.model, "model file");
  s_eval->add_option("--manifest", c.paths.manifest, "split manifest JSON");
  s_eval->add_option("--split", c.split_name, "train, val or test");
  s_eval->add_option("--lexicon", c.paths.lexicon, "lexicon JSON lines (instead of a manifest)");
  s_eval->add_option("--probe", c.paths.probe, "probe JSON lines to compare against");
  s_eval->add_option("--output", c.paths.output, "report JSON (default: stdout)");

  auto* s_lex = app.add_subcommand("lexicon-entropy", "sample Renyi entropy of a lexicon");
  s_lex->add_option("--lexicon", c.paths.lexicon, "lexicon JSON lines");
  s_lex->add_option("--output", c.paths.output, "report JSON (default: stdout)");

  auto* s_model = app.add_subcommand("model-entropy", "truncated H2 with bound, Monte Carlo H1");
  s_model->add_option("--model", c.paths.model, "model file");
  s_model->add_option("--mc-samples", c.mc_shannon_samples, "samples for H1");
  s_model->add_option("--output", c.paths.output, "report JSON (default: stdout)");
  add_enumeration(s_model, c);
  add_seed(s_model, c);
  add_threads(s_model, c);

  auto* s_null = app.add_subcommand("nulltest", "Monte Carlo test against i.i.d. lexicons");
  s_null->add_option("--model", c.paths.model, "model file");
  s_null->add_option("--lexicon", c.paths.lexicon, "observed lexicon JSON lines");
  s_null->add_option("--output", c.paths.output, "report JSON (default: stdout)");
  s_null->add_option("--max-len", c.max_len, "maximum word length in phones");
  add_null(s_null, c);
  add_seed(s_null, c);
  add_threads(s_null, c);

  auto* s_enum = app.add_subcommand("enumerate", "list every word with probability >= delta");
  s_enum->add_option("--model", c.paths.model, "model file");
  s_enum->add_option("--words", c.paths.words, "output JSON lines, most probable first");
  s_enum->add_option("--output", c.paths.output, "summary JSON (default: stdout)");
  add_enumeration(s_enum, c);

  auto* s_family = app.add_subcommand("family-curves", "H1 and H2 of the one-heavy-outcome family");
  s_family->add_option("--n", c.family_n, "numbers of light outcomes")->delimiter(',');
  s_family->add_option("--k-step", c.k_step, "grid step for k");
  s_family->add_option("--output", c.paths.output, "CSV (default: stdout)");

  auto* s_report = app.add_subcommand("report", "table of cross-entropies and entropies per model");
  s_report->add_option("--lexicon", c.paths.lexicon, "full lexicon JSON lines");
  s_report->add_option("--manifest", c.paths.manifest, "split manifest JSON");
  s_report->add_option("--model", c.paths.models, "name=path, repeatable");
  s_report->add_option("--output", c.paths.output, "report JSON (default: stdout)");
  s_report->add_option("--table", c.paths.table, "plain-text table");
  s_report->add_option("--mc-samples", c.mc_shannon_samples, "samples for H1");
  add_enumeration(s_report, c);
  add_null(s_report, c);
  add_seed(s_report, c);
  add_threads(s_report, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) apply_overrides(c, read_json_file(config_path));
    validate(c);
    const std::map<std::string, int (*)(const RunConfig&)> commands{
        {"ingest", cmd_ingest},
        {"split", cmd_split},
        {"train-ngram", cmd_train_ngram},
        {"eval-lm", cmd_eval_lm},
        {"lexicon-entropy", cmd_lexicon_entropy},
        {"model-entropy", cmd_model_entropy},
        {"nulltest", cmd_nulltest},
        {"enumerate", cmd_enumerate},
        {"family-curves", cmd_family_curves},
        {"report", cmd_report}};
    return commands.at(app.get_subcommands().front()->get_name())(c);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    const SupportAccumulators& p = e.partial();
    std::cerr << "budget exhausted: " << e.what() << " (partial support " << p.count << " words, xi "
              << p.xi << ")\n";
    return 4;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
