// tct: train / predict / evaluate / compare a thesaurus-weighted document
// classifier over jsonl corpora.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tct/error.hpp"
#include "tct/pipeline.hpp"

using nlohmann::json;
using namespace tct;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitInternal = 4;

void add_common_flags(CLI::App* cmd, pipeline::RunConfig& cfg, std::string& config_path) {
  cmd->add_option("--config", config_path, "JSON config file; flags override its keys");
  cmd->add_option("--corpus", cfg.corpus_path, "corpus path");
  cmd->add_option("--corpus-format", cfg.corpus_format, "jsonl|directory");
  cmd->add_option("--thesaurus", cfg.thesaurus_path, "thesaurus file (TSV)");
  cmd->add_option("--stopwords", cfg.stopwords_path, "stop-word file");
  cmd->add_option("--suffixes", cfg.suffix_path, "suffix table for light-suffix stemmer");
  cmd->add_option("--stemmer", cfg.stemmer, "none|light-suffix");
  cmd->add_flag("--strip-digits", cfg.strip_digits, "drop digit characters in tokens");
  cmd->add_flag("--symmetrize", cfg.symmetrize_thesaurus, "close the thesaurus relation");
  cmd->add_option("--icf-mode", cfg.icf_mode, "category-count|doc-ratio");
  cmd->add_option("--selection-threshold", cfg.selection_threshold,
                  "override the default 5/log10(|c|)");
  cmd->add_flag("--scale-semantic", cfg.scale_semantic,
                "max-normalize the semantic weight per document");
  cmd->add_flag("!--no-semantic", cfg.semantic, "disable the semantic weight");
  cmd->add_flag("!--no-extend", cfg.extend_vectors, "disable vector extension");
  cmd->add_option("--cosine-norm", cfg.cosine_norm, "sum-of-squares|as-printed");
  cmd->add_option("--lambda", cfg.lambda, "L2 regularization");
  cmd->add_option("--epochs", cfg.epochs, "training epochs");
  cmd->add_option("--learning-rate", cfg.learning_rate, "SGD step size");
  cmd->add_flag("!--no-ext-init", cfg.ext_init,
                "disable extension-weight initialization of thesaurus features");
  cmd->add_option("--train-fraction", cfg.train_fraction, "stratified split fraction");
  cmd->add_option("--seed", cfg.seed, "RNG seed");
  cmd->add_option("--threads", cfg.threads,
                  "worker threads; 0 = all cores, 1 = serial reference");
}

// Config file first, then flags on top.
pipeline::RunConfig resolve_config(const CLI::App* cmd, const pipeline::RunConfig& flags,
                                   const std::string& config_path) {
  if (config_path.empty()) return flags;
  pipeline::RunConfig cfg = pipeline::RunConfig::load_file(config_path);
  pipeline::RunConfig out = cfg;
  auto pick_str = [&](std::string pipeline::RunConfig::* f, const char* flag) {
    if (cmd->count(flag) > 0) out.*f = flags.*f;
  };
  pick_str(&pipeline::RunConfig::corpus_path, "--corpus");
  pick_str(&pipeline::RunConfig::corpus_format, "--corpus-format");
  pick_str(&pipeline::RunConfig::thesaurus_path, "--thesaurus");
  pick_str(&pipeline::RunConfig::stopwords_path, "--stopwords");
  pick_str(&pipeline::RunConfig::suffix_path, "--suffixes");
  pick_str(&pipeline::RunConfig::stemmer, "--stemmer");
  pick_str(&pipeline::RunConfig::icf_mode, "--icf-mode");
  pick_str(&pipeline::RunConfig::cosine_norm, "--cosine-norm");
  if (cmd->count("--strip-digits")) out.strip_digits = flags.strip_digits;
  if (cmd->count("--symmetrize")) out.symmetrize_thesaurus = flags.symmetrize_thesaurus;
  if (cmd->count("--selection-threshold")) out.selection_threshold = flags.selection_threshold;
  if (cmd->count("--scale-semantic")) out.scale_semantic = flags.scale_semantic;
  if (cmd->count("--no-semantic")) out.semantic = flags.semantic;
  if (cmd->count("--no-extend")) out.extend_vectors = flags.extend_vectors;
  if (cmd->count("--lambda")) out.lambda = flags.lambda;
  if (cmd->count("--epochs")) out.epochs = flags.epochs;
  if (cmd->count("--learning-rate")) out.learning_rate = flags.learning_rate;
  if (cmd->count("--no-ext-init")) out.ext_init = flags.ext_init;
  if (cmd->count("--train-fraction")) out.train_fraction = flags.train_fraction;
  if (cmd->count("--seed")) out.seed = flags.seed;
  if (cmd->count("--threads")) out.threads = flags.threads;
  return out;
}

corpus::Dataset load_from_config(const pipeline::RunConfig& cfg) {
  if (cfg.corpus_path.empty()) throw ConfigError("no corpus given (--corpus)");
  auto fmt = cfg.corpus_format == "jsonl" ? corpus::CorpusFormat::jsonl
             : cfg.corpus_format == "directory"
                 ? corpus::CorpusFormat::directory
                 : throw ConfigError("unknown corpus format: " + cfg.corpus_format);
  return corpus::load_corpus(cfg.corpus_path, fmt);
}

int effective_threads(int threads) {
#ifdef _OPENMP
  return threads > 0 ? threads : omp_get_max_threads();
#else
  return 1;
#endif
}

int cmd_train(const pipeline::RunConfig& cfg, const std::string& model_out,
              const std::string& log_out) {
  auto ds = load_from_config(cfg);
  auto outcome = pipeline::train_pipeline(ds, cfg);
  pipeline::save_pipeline(outcome.pipeline, model_out);

  std::ostringstream log;
  log << "vocabulary size: " << outcome.pipeline.vocab.terms.size() << '\n'
      << "  corpus-origin terms: " << outcome.vocab_corpus_terms << '\n'
      << "  thesaurus-origin terms: " << outcome.vocab_thesaurus_terms << '\n'
      << "threads: " << effective_threads(cfg.threads) << '\n';
  for (size_t c = 0; c < outcome.log.epoch_loss.size(); ++c) {
    log << "category " << outcome.pipeline.model.categories[c] << " epoch loss:";
    for (double l : outcome.log.epoch_loss[c]) log << ' ' << l;
    log << '\n';
  }
  if (log_out.empty()) {
    std::cout << log.str();
  } else {
    std::ofstream f(log_out, std::ios::binary);
    f << "# run_config: " << json::parse(cfg.to_json()).dump() << '\n' << log.str();
  }
  std::cout << "model written to " << model_out << '\n';
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& input_path,
                const std::string& output_path) {
  auto pm = pipeline::load_pipeline(model_path);
  std::ifstream in(input_path, std::ios::binary);
  if (!in) throw DataError("cannot open input file: " + input_path);
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw DataError("cannot write output file: " + output_path);

  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object() || !rec.contains("id") ||
        !rec.contains("text") || !rec["id"].is_string() || !rec["text"].is_string())
      throw DataError(input_path + ":" + std::to_string(lineno) + ": malformed record");
    corpus::Document doc{rec["id"].get<std::string>(), rec["text"].get<std::string>()};
    auto p = pipeline::predict_doc(pm, doc);
    json o = {{"id", p.doc_id}, {"label", p.label}, {"scores", p.scores}, {"oov", p.oov}};
    out << o.dump() << '\n';
  }
  return 0;
}

void write_report(const evaluation::EvalReport& rep, const std::string& run_config,
                  const std::string& prefix) {
  std::ofstream txt(prefix + ".txt", std::ios::binary);
  txt << "# run_config: " << json::parse(run_config).dump() << '\n'
      << evaluation::report_text(rep);
  std::ofstream js(prefix + ".json", std::ios::binary);
  json o = {{"run_config", json::parse(run_config)},
            {"records", json::parse(evaluation::report_json(rep))}};
  js << o.dump(2) << '\n';
}

int cmd_evaluate(const std::string& model_path, const std::string& test_path,
                 const std::string& out_prefix) {
  auto pm = pipeline::load_pipeline(model_path);
  auto test = corpus::load_corpus(test_path, corpus::CorpusFormat::jsonl);
  auto rep = pipeline::evaluate(pm, test, "model");
  write_report(rep, pm.run_config_json, out_prefix);
  std::cout << evaluation::report_text(rep);
  return 0;
}

int cmd_compare(const pipeline::RunConfig& base, const std::string& test_path,
                const std::string& out_prefix, bool allow_missing_thesaurus) {
  corpus::Dataset train, test;
  if (!test_path.empty()) {
    train = load_from_config(base);
    test = corpus::load_corpus(test_path, corpus::CorpusFormat::jsonl);
  } else {
    auto ds = load_from_config(base);
    std::tie(train, test) = corpus::split(ds, base.train_fraction, base.seed);
  }
  if (base.thesaurus_path.empty() && !allow_missing_thesaurus)
    throw ConfigError(
        "compare needs a thesaurus for configurations (b) and (c); pass "
        "--baseline-only to run tf-idf alone");

  struct Config {
    std::string label;
    bool semantic, extend;
  };
  std::vector<Config> configs;
  configs.push_back({"tf-idf only", false, false});
  if (!base.thesaurus_path.empty()) {
    configs.push_back({"tf-idf + extension", false, true});
    configs.push_back({"proposed (semantic + tf-idf + extension)", true, true});
  }

  std::vector<evaluation::EvalReport> reports;
  std::string combined_config = "[";
  for (const auto& c : configs) {
    pipeline::RunConfig cfg = base;
    cfg.semantic = c.semantic;
    cfg.extend_vectors = c.extend;
    if (!c.semantic && !c.extend) cfg.thesaurus_path.clear();
    auto outcome = pipeline::train_pipeline(train, cfg);
    reports.push_back(pipeline::evaluate(outcome.pipeline, test, c.label));
    if (combined_config.size() > 1) combined_config += ',';
    combined_config += cfg.to_json();
  }
  combined_config += "]";

  if (reports.size() == 1) {
    std::cout << evaluation::report_text(reports[0]);
    if (!out_prefix.empty()) write_report(reports[0], base.to_json(), out_prefix);
    return 0;
  }

  std::string table = evaluation::comparison_table(reports);
  std::cout << table;
  if (!out_prefix.empty()) {
    std::ofstream txt(out_prefix + ".txt", std::ios::binary);
    txt << "# run_config: " << json::parse(combined_config).dump() << '\n' << table;
    std::ofstream js(out_prefix + ".json", std::ios::binary);
    json o = {{"run_config", json::parse(combined_config)},
              {"records", json::parse(evaluation::comparison_json(reports))}};
    js << o.dump(2) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thesaurus-weighted document classification toolkit"};
  app.require_subcommand(1);

  pipeline::RunConfig cfg;
  std::string config_path, model_path = "model.json", log_path;
  std::string input_path, output_path, test_path, out_prefix, toy_dir = "toy-data";
  bool baseline_only = false;

  auto* train = app.add_subcommand("train", "train a model on a labeled corpus");
  add_common_flags(train, cfg, config_path);
  train->add_option("-o,--model-out", model_path, "output model file");
  train->add_option("--log-out", log_path, "training log file (default: stdout)");

  auto* predict = app.add_subcommand("predict", "classify documents from jsonl");
  predict->add_option("--model", model_path, "model file")->required();
  predict->add_option("--input", input_path, "jsonl of {id,text}")->required();
  predict->add_option("--output", output_path, "output jsonl")->required();

  auto* evaluate = app.add_subcommand("evaluate", "score a model on labeled jsonl");
  evaluate->add_option("--model", model_path, "model file")->required();
  evaluate->add_option("--test", test_path, "labeled jsonl test set")->required();
  evaluate->add_option("--out-prefix", out_prefix, "report file prefix")->required();

  auto* compare = app.add_subcommand(
      "compare", "train and evaluate the three weighting configurations");
  add_common_flags(compare, cfg, config_path);
  compare->add_option("--test", test_path,
                      "held-out jsonl; when given, --corpus is used as-is for training");
  compare->add_option("--out-prefix", out_prefix, "report file prefix");
  compare->add_flag("--baseline-only", baseline_only,
                    "run the tf-idf configuration alone (no thesaurus needed)");

  auto* toy = app.add_subcommand("make-toy-data", "generate the synthetic ablation corpus");
  toy->add_option("--out", toy_dir, "output directory");
  toy->add_option("--seed", cfg.seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed())
      return cmd_train(resolve_config(train, cfg, config_path), model_path, log_path);
    if (predict->parsed()) return cmd_predict(model_path, input_path, output_path);
    if (evaluate->parsed()) return cmd_evaluate(model_path, test_path, out_prefix);
    if (compare->parsed())
      return cmd_compare(resolve_config(compare, cfg, config_path), test_path, out_prefix,
                         baseline_only);
    if (toy->parsed()) {
      pipeline::make_toy_data(toy_dir, cfg.seed);
      std::cout << "toy data written to " << toy_dir << '\n';
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitConfig;
}
