#pragma once

#include <map>
#include <string>
#include <vector>

#include "tct/corpus.hpp"
#include "tct/preprocess.hpp"

namespace tct::term_selection {

/// Per-term, per-category occurrence counts: term_count counts every
/// occurrence, doc_freq counts each document at most once.
struct TermStats {
  std::string term;
  std::map<std::string, long> term_count;  // t_ij
  std::map<std::string, long> doc_freq;    // d_ij
};

enum class IcfMode {
  category_count,  // t_ij * log10(|C| / #categories containing the term)
  doc_ratio,       // t_ij * log10(sum_j d_ij / d_ij), the as-printed variant
};

enum class TermOrigin { corpus, thesaurus };

/// Shared feature space for the classifier. Ordered by descending max
/// tf-icf, ties broken lexicographically; thesaurus-origin extensions are
/// appended after selection.
struct Vocabulary {
  std::vector<std::string> terms;
  std::map<std::string, TermOrigin> origin;
  std::map<std::string, TermStats> stats;  // corpus-origin terms only

  bool contains(const std::string& term) const { return origin.count(term) != 0; }
  size_t index_of(const std::string& term) const;  // throws DataError on miss
};

std::map<std::string, TermStats> collect_stats(const corpus::Dataset& ds,
                                               const preprocess::PreprocessConfig& cfg,
                                               int threads = 1);

double tf_icf(const TermStats& stats, const std::string& category,
              size_t num_categories, IcfMode mode);

/// Default threshold 5 / log10(|c|).
double default_threshold(size_t num_categories);

/// Selects every term whose max per-category tf-icf is >= threshold.
/// threshold < 0 means "use the default".
Vocabulary select_terms(const std::map<std::string, TermStats>& stats,
                        const std::vector<std::string>& categories, IcfMode mode,
                        double threshold = -1.0);

}  // namespace tct::term_selection
