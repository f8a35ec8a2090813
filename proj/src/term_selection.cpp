#include "tct/term_selection.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tct/error.hpp"

namespace tct::term_selection {

size_t Vocabulary::index_of(const std::string& term) const {
  auto it = std::find(terms.begin(), terms.end(), term);
  if (it == terms.end()) throw DataError("term not in vocabulary: " + term);
  return static_cast<size_t>(it - terms.begin());
}

namespace {

using StatsMap = std::map<std::string, TermStats>;

void accumulate_doc(StatsMap& stats, const corpus::LabeledDocument& d,
                    const preprocess::PreprocessConfig& cfg) {
  auto tokens = preprocess::run_pipeline(d.doc.text, cfg);
  std::set<std::string> seen;
  for (const auto& t : tokens) {
    auto& s = stats[t];
    if (s.term.empty()) s.term = t;
    s.term_count[d.label] += 1;
    if (seen.insert(t).second) s.doc_freq[d.label] += 1;
  }
}

// Integer addition; merge order does not affect the result.
void merge(StatsMap& into, const StatsMap& from) {
  for (const auto& [term, s] : from) {
    auto& dst = into[term];
    if (dst.term.empty()) dst.term = term;
    for (const auto& [cat, n] : s.term_count) dst.term_count[cat] += n;
    for (const auto& [cat, n] : s.doc_freq) dst.doc_freq[cat] += n;
  }
}

}  // namespace

StatsMap collect_stats(const corpus::Dataset& ds,
                       const preprocess::PreprocessConfig& cfg, int threads) {
  if (ds.documents.empty()) throw DataError("cannot collect stats on an empty dataset");

  if (threads == 1) {
    StatsMap stats;
    for (const auto& d : ds.documents) accumulate_doc(stats, d, cfg);
    return stats;
  }

#ifdef _OPENMP
  int n_threads = threads > 0 ? threads : omp_get_max_threads();
  std::vector<StatsMap> partial(static_cast<size_t>(n_threads));
#pragma omp parallel for schedule(static) num_threads(n_threads)
  for (long i = 0; i < static_cast<long>(ds.documents.size()); ++i) {
    accumulate_doc(partial[static_cast<size_t>(omp_get_thread_num())],
                   ds.documents[static_cast<size_t>(i)], cfg);
  }
  StatsMap stats;
  for (const auto& p : partial) merge(stats, p);
  return stats;
#else
  StatsMap stats;
  for (const auto& d : ds.documents) accumulate_doc(stats, d, cfg);
  return stats;
#endif
}

double tf_icf(const TermStats& stats, const std::string& category,
              size_t num_categories, IcfMode mode) {
  auto tc = stats.term_count.find(category);
  long t_ij = tc == stats.term_count.end() ? 0 : tc->second;
  auto dc = stats.doc_freq.find(category);
  long d_ij = dc == stats.doc_freq.end() ? 0 : dc->second;

  if (mode == IcfMode::category_count) {
    long cf = 0;
    for (const auto& [cat, n] : stats.doc_freq)
      if (n > 0) ++cf;
    if (cf == 0) return 0.0;
    return static_cast<double>(t_ij) *
           std::log10(static_cast<double>(num_categories) / static_cast<double>(cf));
  }

  // doc_ratio: t_ij * log10(sum_j d_ij / d_ij), 0 when the term misses the
  // category entirely.
  if (d_ij == 0) return 0.0;
  long total = 0;
  for (const auto& [cat, n] : stats.doc_freq) total += n;
  return static_cast<double>(t_ij) *
         std::log10(static_cast<double>(total) / static_cast<double>(d_ij));
}

double default_threshold(size_t num_categories) {
  if (num_categories < 2)
    throw ConfigError("term-selection threshold needs at least 2 categories");
  return 5.0 / std::log10(static_cast<double>(num_categories));
}

Vocabulary select_terms(const StatsMap& stats,
                        const std::vector<std::string>& categories, IcfMode mode,
                        double threshold) {
  if (categories.size() < 2)
    throw ConfigError("term selection needs at least 2 categories");
  double theta = threshold < 0.0 ? default_threshold(categories.size()) : threshold;

  struct Scored {
    double max_score;
    std::string term;
  };
  std::vector<Scored> selected;
  for (const auto& [term, s] : stats) {
    double best = 0.0;
    for (const auto& cat : categories)
      best = std::max(best, tf_icf(s, cat, categories.size(), mode));
    if (best >= theta) selected.push_back({best, term});
  }
  std::sort(selected.begin(), selected.end(), [](const Scored& a, const Scored& b) {
    if (a.max_score != b.max_score) return a.max_score > b.max_score;
    return a.term < b.term;
  });

  Vocabulary vocab;
  for (const auto& s : selected) {
    vocab.terms.push_back(s.term);
    vocab.origin[s.term] = TermOrigin::corpus;
    vocab.stats[s.term] = stats.at(s.term);
  }
  return vocab;
}

}  // namespace tct::term_selection
