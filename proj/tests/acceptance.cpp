// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] is the path to the tct CLI binary (for the subprocess
// criteria); omit to skip those with a FAIL.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "tct/pipeline.hpp"

using namespace tct;
namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << "  " << name;
  if (!detail.empty()) std::cout << "  (" << detail << ")";
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Criterion: equation oracle suite. Each operation is checked against a
// direct brute-force transcription of the defining formula on randomized
// tiny inputs, absolute tolerance 1e-9.
// ---------------------------------------------------------------------------

constexpr double kTol = 1e-9;

bool check_equation_oracles() {
  std::mt19937 rng(2024);
  auto randint = [&](long lo, long hi) { return lo + long(rng() % uint64_t(hi - lo + 1)); };
  bool ok = true;
  auto expect = [&](double got, double want, const char* what) {
    if (std::abs(got - want) > kTol) {
      std::cerr << "  oracle mismatch in " << what << ": got " << got << " want " << want
                << "\n";
      ok = false;
    }
  };

  // tf_icf, both modes.
  for (int it = 0; it < 20; ++it) {
    size_t n_cats = size_t(randint(2, 6));
    std::vector<std::string> cats;
    for (size_t c = 0; c < n_cats; ++c) cats.push_back("c" + std::to_string(c));
    term_selection::TermStats s;
    s.term = "t";
    for (const auto& c : cats) {
      long d = randint(0, 4);
      if (d > 0) {
        s.doc_freq[c] = d;
        s.term_count[c] = d + randint(0, 5);
      }
    }
    if (s.doc_freq.empty()) {
      s.doc_freq[cats[0]] = 1;
      s.term_count[cats[0]] = 1;
    }
    for (const auto& c : cats) {
      long t_ij = s.term_count.count(c) ? s.term_count.at(c) : 0;
      long d_ij = s.doc_freq.count(c) ? s.doc_freq.at(c) : 0;
      long cf = 0, d_total = 0;
      for (const auto& [cc, d] : s.doc_freq) {
        if (d > 0) ++cf;
        d_total += d;
      }
      double want_cc = double(t_ij) * std::log10(double(n_cats) / double(cf));
      expect(term_selection::tf_icf(s, c, n_cats, term_selection::IcfMode::category_count),
             want_cc, "tf_icf/category_count");
      double want_dr = d_ij == 0 ? 0.0
                                 : double(t_ij) * std::log10(double(d_total) / double(d_ij));
      expect(term_selection::tf_icf(s, c, n_cats, term_selection::IcfMode::doc_ratio),
             want_dr, "tf_icf/doc_ratio");
    }
  }

  // tf_idf.
  for (int it = 0; it < 20; ++it) {
    long N = randint(1, 50);
    long df = randint(1, N);
    long tf = randint(0, 9);
    double want = tf == 0 ? 0.0 : double(tf) * std::log10(double(N) / double(df));
    expect(weighting::tf_idf(tf, N, df), want, "tf_idf");
  }

  // cosine_normalize.
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int it = 0; it < 20; ++it) {
    weighting::FeatureVector v{"d", {}};
    int n = int(rng() % 6);
    for (int k = 0; k < n; ++k) v.weights["t" + std::to_string(k)] = u(rng);
    double sq = 0.0;
    for (const auto& [t, w] : v.weights) sq += w * w;
    double norm = std::sqrt(sq);
    auto got = weighting::cosine_normalize(v);
    for (const auto& [t, w] : v.weights) {
      double want = norm == 0.0 ? w : w / norm;
      double g = got.weights.count(t) ? got.weights.at(t) : 0.0;
      expect(g, want, "cosine_normalize");
    }
  }

  // similarity and semantic_weight.
  for (int it = 0; it < 20; ++it) {
    std::map<std::string, std::set<std::string>> entries;
    std::set<std::string> doc;
    size_t n_terms = 2 + rng() % 5;
    for (size_t k = 0; k < n_terms; ++k) {
      std::string t = "t" + std::to_string(k);
      doc.insert(t);
      std::set<std::string> ss;
      for (int m = 0; m < 5; ++m)
        if (rng() % 2) ss.insert("m" + std::to_string(rng() % 7));
      ss.insert(rng() % 3 ? "m0" : t);  // occasional self-membership in source
      entries[t] = ss;
    }
    thesaurus::Thesaurus th(entries);

    auto oracle_ss = [&](const std::string& t) {
      std::set<std::string> m = entries.count(t) ? entries.at(t) : std::set<std::string>{};
      m.erase(t);
      return m;
    };
    for (const auto& a : doc)
      for (const auto& b : doc) {
        size_t want = 0;
        for (const auto& w : oracle_ss(a))
          if (oracle_ss(b).count(w)) ++want;
        size_t got = thesaurus::similarity(th.semantic_set(a), th.semantic_set(b));
        expect(double(got), double(want), "similarity");
      }
    for (const auto& t : doc) {
      long want = 0;
      for (const auto& o : doc) {
        if (o == t) continue;
        for (const auto& w : oracle_ss(t))
          if (oracle_ss(o).count(w)) ++want;
      }
      expect(double(weighting::semantic_weight(t, doc, th)), double(want),
             "semantic_weight");
    }
  }

  // combined_weight.
  for (int it = 0; it < 20; ++it) {
    double s = double(rng() % 10);
    double t = u(rng) / 5.0;
    expect(weighting::combined_weight(s, t), s + t, "combined_weight");
  }

  // extension_weight.
  for (int it = 0; it < 20; ++it) {
    size_t n_cats = 2 + rng() % 5;
    std::vector<std::string> cats;
    for (size_t c = 0; c < n_cats; ++c) cats.push_back("c" + std::to_string(c));
    std::map<std::string, long> freq;
    for (const auto& c : cats)
      if (rng() % 2) freq[c] = long(rng() % 6);
    long total = 0;
    for (const auto& [c, f] : freq) total += f;
    auto got = weighting::extension_weight(freq, cats);
    for (const auto& c : cats) {
      double want = total == 0 ? 1.0 / double(n_cats)
                               : double(freq.count(c) ? freq.at(c) : 0) / double(total);
      expect(got.at(c), want, "extension_weight");
    }
  }

  // precision / recall / f1 / macro averages.
  for (int it = 0; it < 20; ++it) {
    size_t n_cats = 2 + rng() % 5;
    std::vector<std::string> cats;
    for (size_t c = 0; c < n_cats; ++c) cats.push_back("c" + std::to_string(c));
    size_t n = 1 + rng() % 60;
    std::vector<std::string> gold, pred;
    for (size_t i = 0; i < n; ++i) {
      gold.push_back(cats[rng() % n_cats]);
      pred.push_back(cats[rng() % n_cats]);
    }
    auto counts = evaluation::confusion(gold, pred, cats);
    auto rep = evaluation::macro_report(counts);

    double p_sum = 0, r_sum = 0;
    for (const auto& c : cats) {
      long tp = 0, fp = 0, fn = 0;
      for (size_t i = 0; i < n; ++i) {
        if (pred[i] == c && gold[i] == c) ++tp;
        if (pred[i] == c && gold[i] != c) ++fp;
        if (pred[i] != c && gold[i] == c) ++fn;
      }
      double p = tp + fp == 0 ? 0.0 : double(tp) / double(tp + fp);
      double r = tp + fn == 0 ? 0.0 : double(tp) / double(tp + fn);
      double f = p + r == 0.0 ? 0.0 : 2 * p * r / (p + r);
      expect(rep.per_category.at(c).precision, p, "precision");
      expect(rep.per_category.at(c).recall, r, "recall");
      expect(rep.per_category.at(c).f1, f, "f1");
      p_sum += p;
      r_sum += r;
    }
    double p_ave = p_sum / double(n_cats), r_ave = r_sum / double(n_cats);
    expect(rep.p_ave, p_ave, "p_ave");
    expect(rep.r_ave, r_ave, "r_ave");
    expect(rep.f1_ave, p_ave + r_ave == 0 ? 0.0 : 2 * p_ave * r_ave / (p_ave + r_ave),
           "f1_ave");
  }

  return ok;
}

// ---------------------------------------------------------------------------
// Criterion: degeneracy identity. Empty thesaurus + extension off must give
// exactly the pure tf-idf vectors.
// ---------------------------------------------------------------------------

bool check_degeneracy_identity() {
  std::mt19937 rng(5);
  corpus::Dataset ds;
  ds.categories = {"a", "b"};
  std::vector<std::string> words = {"red", "green", "blue", "gray", "pink", "cyan"};
  for (int i = 0; i < 30; ++i) {
    std::string text;
    int len = 1 + int(rng() % 8);
    for (int k = 0; k < len; ++k) {
      if (!text.empty()) text += ' ';
      text += words[rng() % words.size()];
    }
    ds.documents.push_back({{"d" + std::to_string(i), text}, i % 2 ? "a" : "b"});
  }

  preprocess::PreprocessConfig pcfg;
  weighting::WeightingConfig wcfg;
  wcfg.extend_vectors = false;
  thesaurus::Thesaurus empty_th;
  auto idx = weighting::build_index(ds, pcfg);
  term_selection::Vocabulary vocab;
  for (const auto& w : words) {
    vocab.terms.push_back(w);
    vocab.origin[w] = term_selection::TermOrigin::corpus;
  }

  for (const auto& d : ds.documents) {
    auto got = weighting::build_feature_vector(d.doc, vocab, idx, empty_th, wcfg, pcfg);
    // Pure tf-idf reference on the same arithmetic path.
    weighting::FeatureVector raw{d.doc.id, {}};
    std::map<std::string, long> tf;
    for (const auto& t : preprocess::run_pipeline(d.doc.text, pcfg)) tf[t] += 1;
    for (const auto& [t, c] : tf)
      raw.weights[t] = weighting::tf_idf(c, idx.total_docs, idx.doc_freq.at(t));
    auto want = weighting::cosine_normalize(raw);
    for (const auto& [t, w] : want.weights) {
      double g = got.weights.count(t) ? got.weights.at(t) : 0.0;
      if (g != w) return false;  // bitwise
    }
    for (const auto& [t, w] : got.weights)
      if (!want.weights.count(t) || want.weights.at(t) != w) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Criterion: ablation ordering on the synthetic corpus.
// ---------------------------------------------------------------------------

bool check_ablation(double& f1_a, double& f1_b, double& f1_c) {
  auto dir = fs::temp_directory_path() / "tct_acceptance_toy";
  fs::remove_all(dir);
  pipeline::make_toy_data(dir.string(), 7);
  auto train = corpus::load_corpus((dir / "train.jsonl").string(),
                                   corpus::CorpusFormat::jsonl);
  auto test =
      corpus::load_corpus((dir / "test.jsonl").string(), corpus::CorpusFormat::jsonl);

  auto run = [&](bool semantic, bool extend, const std::string& label) {
    pipeline::RunConfig cfg;
    cfg.corpus_path = (dir / "train.jsonl").string();
    cfg.thesaurus_path = semantic || extend ? (dir / "thesaurus.tsv").string() : "";
    cfg.semantic = semantic;
    cfg.extend_vectors = extend;
    cfg.threads = 1;
    auto outcome = pipeline::train_pipeline(train, cfg);
    return pipeline::evaluate(outcome.pipeline, test, label);
  };

  f1_a = run(false, false, "tf-idf only").f1_ave;
  f1_b = run(false, true, "tf-idf + extension").f1_ave;
  f1_c = run(true, true, "proposed").f1_ave;
  fs::remove_all(dir);
  return f1_c >= f1_b - 1e-12 && f1_b >= f1_a - 1e-12 && (f1_c - f1_a) >= 0.05;
}

// ---------------------------------------------------------------------------
// Criterion: classifier sanity.
// ---------------------------------------------------------------------------

bool check_classifier_sanity(const std::string& cli) {
  // 100 linearly separable points, default hyperparameters.
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> noise(-0.8, 0.8);
  std::vector<std::pair<weighting::FeatureVector, std::string>> data;
  for (int i = 0; i < 50; ++i)
    data.push_back({weighting::FeatureVector{
                        "p" + std::to_string(i),
                        {{"x", 4.0 + noise(rng)}, {"y", 0.5 + noise(rng)}}},
                    "left"});
  for (int i = 50; i < 100; ++i)
    data.push_back({weighting::FeatureVector{
                        "p" + std::to_string(i),
                        {{"x", 0.5 + noise(rng)}, {"y", 4.0 + noise(rng)}}},
                    "right"});
  term_selection::Vocabulary vocab;
  vocab.terms = {"x", "y"};
  vocab.origin["x"] = vocab.origin["y"] = term_selection::TermOrigin::corpus;

  auto model = classifier::train(data, vocab, {"left", "right"}, classifier::Hyperparams{});
  for (const auto& [v, label] : data)
    if (classifier::predict(model, v).label != label) return false;

  // Deterministic model bytes across runs with equal seed.
  auto dir = fs::temp_directory_path() / "tct_acceptance_sanity";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto m1 = (dir / "m1.json").string(), m2 = (dir / "m2.json").string();
  classifier::save_model(model, m1);
  classifier::save_model(
      classifier::train(data, vocab, {"left", "right"}, classifier::Hyperparams{}), m2);
  if (read_file(m1) != read_file(m2)) return false;

  // --threads 1 and --threads N give identical evaluation reports (CLI path).
  if (cli.empty()) return false;
  pipeline::make_toy_data((dir / "toy").string(), 7);
  auto q = [](const std::string& s) { return "'" + s + "'"; };
  auto train_jsonl = (dir / "toy" / "train.jsonl").string();
  auto test_jsonl = (dir / "toy" / "test.jsonl").string();
  auto thesaurus_tsv = (dir / "toy" / "thesaurus.tsv").string();
  for (int threads : {1, 4}) {
    std::string suffix = std::to_string(threads);
    std::string cmd = q(cli) + " train --corpus " + q(train_jsonl) + " --thesaurus " +
                      q(thesaurus_tsv) + " --threads " + suffix + " -o " +
                      q((dir / ("model" + suffix + ".json")).string()) +
                      " --log-out " + q((dir / ("log" + suffix)).string()) + " > /dev/null";
    if (std::system(cmd.c_str()) != 0) return false;
    cmd = q(cli) + " evaluate --model " + q((dir / ("model" + suffix + ".json")).string()) +
          " --test " + q(test_jsonl) + " --out-prefix " +
          q((dir / ("report" + suffix)).string()) + " > /dev/null";
    if (std::system(cmd.c_str()) != 0) return false;
  }
  // The embedded run_config legitimately records the differing --threads
  // value; the evaluation records themselves must be identical.
  json r1 = json::parse(read_file((dir / "report1.json").string()));
  json r4 = json::parse(read_file((dir / "report4.json").string()));
  bool same = r1["records"] == r4["records"];
  fs::remove_all(dir);
  return same;
}

// ---------------------------------------------------------------------------
// Criterion: metric identities on randomized prediction sets.
// ---------------------------------------------------------------------------

bool check_metric_identities() {
  std::mt19937 rng(77);
  std::vector<std::string> all = {"c0", "c1", "c2", "c3", "c4", "c5"};
  for (int it = 0; it < 40; ++it) {
    size_t k = 2 + rng() % 5;
    size_t n = 1 + rng() % 200;
    std::vector<std::string> cats(all.begin(), all.begin() + k);
    std::vector<std::string> gold, pred;
    for (size_t i = 0; i < n; ++i) {
      gold.push_back(cats[rng() % k]);
      pred.push_back(cats[rng() % k]);
    }
    auto rep = evaluation::macro_report(evaluation::confusion(gold, pred, cats));
    for (const auto& c : cats) {
      const auto& s = rep.per_category.at(c);
      if (s.precision < 0 || s.precision > 1 || s.recall < 0 || s.recall > 1 ||
          s.f1 < 0 || s.f1 > 1)
        return false;
      if (s.precision > 0 && s.recall > 0) {
        if (s.f1 > std::max(s.precision, s.recall) + 1e-12) return false;
        if (s.f1 < std::min(s.precision, s.recall) - 1e-12) return false;
      }
      double want_f1 = evaluation::f1(s.precision, s.recall);
      if (std::abs(s.f1 - want_f1) > 1e-12) return false;
    }
    if (std::abs(rep.f1_ave - evaluation::f1(rep.p_ave, rep.r_ave)) > 1e-12) return false;

    // Permutation invariance.
    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    for (size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);
    std::vector<std::string> g2, p2;
    for (size_t i : perm) {
      g2.push_back(gold[i]);
      p2.push_back(pred[i]);
    }
    auto rep2 = evaluation::macro_report(evaluation::confusion(g2, p2, cats));
    if (std::abs(rep2.f1_ave - rep.f1_ave) > 1e-12) return false;
  }

  // Constructed asymmetric case: macro F1 differs from mean of per-class F1s.
  std::vector<std::string> gold = {"A", "A", "A", "A", "A", "B", "B", "B"};
  std::vector<std::string> pred = {"A", "B", "B", "B", "B", "B", "B", "B"};
  auto rep = evaluation::macro_report(evaluation::confusion(gold, pred, {"A", "B"}));
  double mean_f1 = (rep.per_category.at("A").f1 + rep.per_category.at("B").f1) / 2.0;
  return std::abs(rep.f1_ave - mean_f1) > 1e-3;
}

// ---------------------------------------------------------------------------
// Criterion: preprocessing invariants on the checked-in fixture.
// ---------------------------------------------------------------------------

bool check_preprocessing_fixture() {
  std::ifstream in(std::string(TCT_FIXTURE_DIR) + "/persian_tokens.jsonl");
  if (!in.good()) return false;
  std::string line;
  size_t cases = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json rec = json::parse(line);
    std::string norm = preprocess::normalize(rec["text"].get<std::string>());
    if (norm != rec["normalized"].get<std::string>()) return false;
    if (preprocess::normalize(norm) != norm) return false;  // idempotence
    if (preprocess::tokenize(norm) != rec["tokens"].get<std::vector<std::string>>())
      return false;
    ++cases;
  }
  return cases >= 30;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";

  {
    auto t0 = Clock::now();
    bool ok = check_equation_oracles();
    double dt = seconds_since(t0);
    report("equation oracle suite (all weighting and metric formulas, 20+ randomized inputs, tol 1e-9)",
           ok && dt < 5.0, "runtime " + std::to_string(dt) + "s");
  }
  {
    auto t0 = Clock::now();
    bool ok = check_degeneracy_identity();
    double dt = seconds_since(t0);
    report("degeneracy identity (empty thesaurus == pure tf-idf, bitwise)",
           ok && dt < 5.0, "runtime " + std::to_string(dt) + "s");
  }
  {
    auto t0 = Clock::now();
    double a = 0, b = 0, c = 0;
    bool ok = check_ablation(a, b, c);
    double dt = seconds_since(t0);
    std::ostringstream d;
    d << "F1: tf-idf " << a * 100 << ", +extension " << b * 100 << ", proposed " << c * 100
      << ", runtime " << dt << "s";
    report("ablation ordering (proposed >= extension >= tf-idf, gap >= 5pp)",
           ok && dt < 60.0, d.str());
  }
  {
    bool ok = check_classifier_sanity(cli);
    report("classifier sanity (separable 100%, deterministic bytes, thread-count "
           "invariant reports)",
           ok);
  }
  report("metric identities (bounds, harmonic mean, permutation invariance)",
         check_metric_identities());
  report("preprocessing invariants (fixture of 30+ strings, ZWNJ rule, idempotence)",
         check_preprocessing_fixture());

  if (g_failures) std::cout << g_failures << " criterion(s) failed" << std::endl;
  return g_failures == 0 ? 0 : 1;
}
