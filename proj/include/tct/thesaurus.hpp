#pragma once

#include <map>
#include <set>
#include <string>

namespace tct::thesaurus {

struct SemanticSet {
  std::string term;
  std::set<std::string> members;  // never contains term itself
};

/// Headword -> related-word set, all strings normalized. Immutable after
/// load; lookups are read-only and thread-safe.
class Thesaurus {
 public:
  Thesaurus() = default;
  explicit Thesaurus(std::map<std::string, std::set<std::string>> entries)
      : entries_(std::move(entries)) {}

  const std::map<std::string, std::set<std::string>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// entries[term] minus {term}; empty set when term is not a headword.
  SemanticSet semantic_set(const std::string& term) const;

  /// Closes the relation: if a -> b then b -> a.
  Thesaurus symmetrized() const;

 private:
  std::map<std::string, std::set<std::string>> entries_;
};

/// File format: `headword<TAB>related1,related2,...`, UTF-8, '#' comments.
/// Duplicate headword lines merge by union. Empty file is a legal empty
/// thesaurus.
Thesaurus load_thesaurus(const std::string& path);

/// Number of common words of two semantic sets.
size_t similarity(const SemanticSet& a, const SemanticSet& b);

}  // namespace tct::thesaurus
