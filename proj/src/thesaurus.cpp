#include "tct/thesaurus.hpp"

#include <algorithm>
#include <fstream>

#include "tct/error.hpp"
#include "tct/preprocess.hpp"

namespace tct::thesaurus {

SemanticSet Thesaurus::semantic_set(const std::string& term) const {
  SemanticSet ss;
  ss.term = term;
  auto it = entries_.find(term);
  if (it != entries_.end()) {
    ss.members = it->second;
    ss.members.erase(term);
  }
  return ss;
}

Thesaurus Thesaurus::symmetrized() const {
  auto closed = entries_;
  for (const auto& [head, related] : entries_)
    for (const auto& r : related) closed[r].insert(head);
  return Thesaurus(std::move(closed));
}

Thesaurus load_thesaurus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open thesaurus file: " + path);

  std::map<std::string, std::set<std::string>> entries;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": malformed thesaurus line (no TAB)");
    std::string head = preprocess::normalize(line.substr(0, tab));
    if (head.empty())
      throw DataError(path + ":" + std::to_string(lineno) + ": empty headword");
    auto& related = entries[head];
    std::string rest = line.substr(tab + 1);
    size_t pos = 0;
    while (pos <= rest.size()) {
      size_t comma = rest.find(',', pos);
      std::string word = rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                                     : comma - pos);
      std::string w = preprocess::normalize(word);
      if (!w.empty()) related.insert(w);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return Thesaurus(std::move(entries));
}

size_t similarity(const SemanticSet& a, const SemanticSet& b) {
  const auto& small = a.members.size() <= b.members.size() ? a.members : b.members;
  const auto& large = a.members.size() <= b.members.size() ? b.members : a.members;
  size_t n = 0;
  for (const auto& w : small)
    if (large.count(w)) ++n;
  return n;
}

}  // namespace tct::thesaurus
