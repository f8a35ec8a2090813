// Compares the serial reference path (threads == 1) against the OpenMP path
// for the two parallel kernels: corpus statistics collection and feature
// vector construction. Verifies that both paths produce identical results
// before reporting timings.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tct/term_selection.hpp"
#include "tct/weighting.hpp"

using namespace tct;
using Clock = std::chrono::steady_clock;

namespace {

corpus::Dataset synthetic_corpus(size_t n_docs, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> cats = {"alpha", "beta", "gamma", "delta"};
  // ~2000 distinct terms, Zipf-ish by drawing from a squared distribution.
  std::vector<std::string> lexicon;
  for (int i = 0; i < 2000; ++i) lexicon.push_back("w" + std::to_string(i));

  corpus::Dataset ds;
  ds.categories = cats;
  for (size_t d = 0; d < n_docs; ++d) {
    std::ostringstream text;
    size_t len = 80 + rng() % 120;
    for (size_t k = 0; k < len; ++k) {
      double u = double(rng() % 1000000) / 1000000.0;
      size_t idx = size_t(u * u * double(lexicon.size()));
      if (idx >= lexicon.size()) idx = lexicon.size() - 1;
      if (k) text << ' ';
      text << lexicon[idx];
    }
    ds.documents.push_back({{"d" + std::to_string(d), text.str()}, cats[d % cats.size()]});
  }
  return ds;
}

thesaurus::Thesaurus synthetic_thesaurus() {
  std::map<std::string, std::set<std::string>> entries;
  for (int i = 0; i < 400; ++i) {
    std::set<std::string> members;
    for (int m = 1; m <= 4; ++m) members.insert("w" + std::to_string((i + m * 97) % 2000));
    entries["w" + std::to_string(i)] = members;
  }
  return thesaurus::Thesaurus(entries);
}

template <typename F>
double time_s(F&& f) {
  auto t0 = Clock::now();
  f();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  size_t n_docs = argc > 1 ? std::stoul(argv[1]) : 4000;
#ifdef _OPENMP
  int par_threads = omp_get_max_threads();
#else
  int par_threads = 1;
  std::cout << "(built without OpenMP: parallel path falls back to serial)\n";
#endif
  std::cout << "documents: " << n_docs << ", parallel threads: " << par_threads << "\n\n";

  auto ds = synthetic_corpus(n_docs, 42);
  auto th = synthetic_thesaurus();
  preprocess::PreprocessConfig pcfg;
  weighting::WeightingConfig wcfg;

  // Kernel 1: term statistics.
  std::map<std::string, term_selection::TermStats> stats_serial, stats_parallel;
  double t_stats_serial = time_s([&] { stats_serial = term_selection::collect_stats(ds, pcfg, 1); });
  double t_stats_parallel =
      time_s([&] { stats_parallel = term_selection::collect_stats(ds, pcfg, 0); });
  bool stats_equal = true;
  if (stats_serial.size() != stats_parallel.size()) stats_equal = false;
  for (const auto& [term, s] : stats_serial) {
    auto it = stats_parallel.find(term);
    if (it == stats_parallel.end() || it->second.term_count != s.term_count ||
        it->second.doc_freq != s.doc_freq) {
      stats_equal = false;
      break;
    }
  }

  // Kernel 2: feature vectors over a selected vocabulary.
  // Threshold 0 keeps the whole lexicon: the bench measures kernel cost, not
  // selection quality.
  auto vocab = term_selection::select_terms(stats_serial, ds.categories,
                                            term_selection::IcfMode::category_count, 0.0);
  auto index = weighting::build_index(ds, pcfg, 1);
  std::vector<weighting::FeatureVector> vec_serial, vec_parallel;
  double t_vec_serial = time_s(
      [&] { vec_serial = weighting::build_feature_vectors(ds.documents, vocab, index, th, wcfg, pcfg, 1); });
  double t_vec_parallel = time_s(
      [&] { vec_parallel = weighting::build_feature_vectors(ds.documents, vocab, index, th, wcfg, pcfg, 0); });
  bool vec_equal = vec_serial.size() == vec_parallel.size();
  for (size_t i = 0; vec_equal && i < vec_serial.size(); ++i)
    vec_equal = vec_serial[i].doc_id == vec_parallel[i].doc_id &&
                vec_serial[i].weights == vec_parallel[i].weights;

  auto row = [](const char* name, double serial, double parallel, bool equal) {
    std::cout << name << ": serial " << serial << "s, parallel " << parallel << "s, speedup "
              << (parallel > 0 ? serial / parallel : 0.0) << "x, outputs "
              << (equal ? "identical" : "DIFFER") << "\n";
  };
  row("collect_stats       ", t_stats_serial, t_stats_parallel, stats_equal);
  row("build_feature_vectors", t_vec_serial, t_vec_parallel, vec_equal);

  if (!stats_equal || !vec_equal) {
    std::cerr << "error: serial and parallel outputs differ\n";
    return 1;
  }
  return 0;
}
