#include "tct/weighting.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tct/error.hpp"

namespace tct::weighting {

CorpusIndex build_index(const corpus::Dataset& ds,
                        const preprocess::PreprocessConfig& cfg, int threads) {
  CorpusIndex idx;
  idx.total_docs = static_cast<long>(ds.documents.size());

  std::vector<std::vector<std::string>> token_lists(ds.documents.size());
  auto work = [&](size_t i) {
    token_lists[i] = preprocess::run_pipeline(ds.documents[i].doc.text, cfg);
  };
  if (threads == 1) {
    for (size_t i = 0; i < ds.documents.size(); ++i) work(i);
  } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
    for (long i = 0; i < static_cast<long>(ds.documents.size()); ++i)
      work(static_cast<size_t>(i));
  }

  for (size_t i = 0; i < ds.documents.size(); ++i) {
    idx.doc_lengths[ds.documents[i].doc.id] = static_cast<long>(token_lists[i].size());
    std::set<std::string> distinct(token_lists[i].begin(), token_lists[i].end());
    for (const auto& t : distinct) idx.doc_freq[t] += 1;
  }
  return idx;
}

double tf_idf(long tf, long total_docs, long doc_freq) {
  if (tf == 0) return 0.0;
  if (doc_freq <= 0)
    throw InternalError("tf_idf: positive tf with zero document frequency");
  return static_cast<double>(tf) *
         std::log10(static_cast<double>(total_docs) / static_cast<double>(doc_freq));
}

FeatureVector cosine_normalize(const FeatureVector& v, CosineNorm mode) {
  double denom_arg = 0.0;
  for (const auto& [term, w] : v.weights)
    denom_arg += mode == CosineNorm::sum_of_squares ? w * w : w;
  double denom = std::sqrt(denom_arg);
  if (denom == 0.0 || !std::isfinite(denom)) return v;
  FeatureVector out;
  out.doc_id = v.doc_id;
  for (const auto& [term, w] : v.weights)
    if (w != 0.0) out.weights[term] = w / denom;
  return out;
}

long semantic_weight(const std::string& term, const std::set<std::string>& doc_terms,
                     const thesaurus::Thesaurus& th) {
  auto ss = th.semantic_set(term);
  if (ss.members.empty()) return 0;
  long total = 0;
  for (const auto& other : doc_terms) {
    if (other == term) continue;
    total += static_cast<long>(thesaurus::similarity(ss, th.semantic_set(other)));
  }
  return total;
}

double combined_weight(double semantic, double normalized_tfidf) {
  return semantic + normalized_tfidf;
}

std::map<std::string, double> extension_weight(
    const std::map<std::string, long>& per_category_freq,
    const std::vector<std::string>& categories) {
  if (categories.size() < 2)
    throw ConfigError("extension weight needs at least 2 categories");
  long total = 0;
  for (const auto& cat : categories) {
    auto it = per_category_freq.find(cat);
    if (it != per_category_freq.end()) total += it->second;
  }
  std::map<std::string, double> out;
  for (const auto& cat : categories) {
    if (total == 0) {
      out[cat] = 1.0 / static_cast<double>(categories.size());
    } else {
      auto it = per_category_freq.find(cat);
      long f = it == per_category_freq.end() ? 0 : it->second;
      out[cat] = static_cast<double>(f) / static_cast<double>(total);
    }
  }
  return out;
}

FeatureVector build_feature_vector(const corpus::Document& doc,
                                   const term_selection::Vocabulary& vocab,
                                   const CorpusIndex& index,
                                   const thesaurus::Thesaurus& th,
                                   const WeightingConfig& wcfg,
                                   const preprocess::PreprocessConfig& pcfg) {
  if (vocab.terms.empty()) throw DataError("empty vocabulary");

  auto tokens = preprocess::run_pipeline(doc.text, pcfg);
  std::map<std::string, long> tf;
  for (const auto& t : tokens)
    if (vocab.contains(t)) tf[t] += 1;

  std::set<std::string> doc_terms(tokens.begin(), tokens.end());

  // Raw tf-idf over the document's vocabulary terms. A term the training
  // index never saw carries no statistical evidence; its tf-idf part is 0.
  FeatureVector tfidf_vec;
  tfidf_vec.doc_id = doc.id;
  for (const auto& [term, count] : tf) {
    auto it = index.doc_freq.find(term);
    double w = (it == index.doc_freq.end() || it->second == 0)
                   ? 0.0
                   : tf_idf(count, index.total_docs, it->second);
    tfidf_vec.weights[term] = w;
  }
  FeatureVector norm = cosine_normalize(tfidf_vec, wcfg.cosine_norm);

  std::map<std::string, long> sem;
  long max_sem = 0;
  if (wcfg.semantic && !th.empty()) {
    for (const auto& [term, count] : tf) {
      long s = semantic_weight(term, doc_terms, th);
      sem[term] = s;
      max_sem = std::max(max_sem, s);
    }
  }

  FeatureVector out;
  out.doc_id = doc.id;
  for (const auto& [term, count] : tf) {
    double s = 0.0;
    if (auto it = sem.find(term); it != sem.end()) s = static_cast<double>(it->second);
    if (wcfg.scale_semantic && max_sem > 0) s /= static_cast<double>(max_sem);
    double nt = 0.0;
    if (auto it = norm.weights.find(term); it != norm.weights.end()) nt = it->second;
    double w = combined_weight(s, nt);
    if (w != 0.0) out.weights[term] = w;
  }
  return out;
}

std::vector<FeatureVector> build_feature_vectors(
    const std::vector<corpus::LabeledDocument>& docs,
    const term_selection::Vocabulary& vocab, const CorpusIndex& index,
    const thesaurus::Thesaurus& th, const WeightingConfig& wcfg,
    const preprocess::PreprocessConfig& pcfg, int threads) {
  std::vector<FeatureVector> out(docs.size());
  auto work = [&](size_t i) {
    out[i] = build_feature_vector(docs[i].doc, vocab, index, th, wcfg, pcfg);
  };
  if (threads == 1) {
    for (size_t i = 0; i < docs.size(); ++i) work(i);
  } else {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : omp_get_max_threads())
#endif
    for (long i = 0; i < static_cast<long>(docs.size()); ++i) work(static_cast<size_t>(i));
  }
  return out;
}

std::map<std::string, std::map<std::string, double>> extend_vocabulary(
    term_selection::Vocabulary& vocab, const thesaurus::Thesaurus& th,
    const std::map<std::string, term_selection::TermStats>& full_stats,
    const std::vector<std::string>& categories) {
  std::set<std::string> additions;
  for (const auto& term : vocab.terms) {
    if (vocab.origin.at(term) != term_selection::TermOrigin::corpus) continue;
    for (const auto& member : th.semantic_set(term).members)
      if (!vocab.contains(member)) additions.insert(member);
  }

  std::map<std::string, std::map<std::string, double>> ext_weights;
  for (const auto& term : additions) {
    vocab.terms.push_back(term);
    vocab.origin[term] = term_selection::TermOrigin::thesaurus;
    std::map<std::string, long> freq;
    if (auto it = full_stats.find(term); it != full_stats.end())
      freq = it->second.term_count;
    ext_weights[term] = extension_weight(freq, categories);
  }
  return ext_weights;
}

}  // namespace tct::weighting
