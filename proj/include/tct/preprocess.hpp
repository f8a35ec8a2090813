#pragma once

#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

namespace tct::preprocess {

enum class Stemmer { none, light_suffix };

struct PreprocessConfig {
  std::unordered_set<std::string> stopwords;  // already normalized
  Stemmer stemmer = Stemmer::none;
  bool strip_digits = false;
  // Extra codepoint folds applied during normalize, e.g. project-specific
  // half-space surrogates mapped onto ZWNJ.
  std::vector<std::pair<char32_t, char32_t>> normalization_map;
  // Suffixes for the light_suffix stemmer, in priority (file) order.
  std::vector<std::string> suffixes;
};

/// Canonical text normalization: Arabic-script canonical composition,
/// Arabic Yeh/Kaf folded to their Persian forms, half-space surrogates
/// folded to ZWNJ, whitespace runs collapsed, Latin lowercased. Idempotent.
std::string normalize(const std::string& text);
std::string normalize(const std::string& text, const PreprocessConfig& cfg);

/// Splits normalized text on outside space and punctuation. ZWNJ binds
/// adjacent morphemes into one token and is kept in the token surface.
std::vector<std::string> tokenize(const std::string& normalized_text);
std::vector<std::string> tokenize(const std::string& normalized_text,
                                  const PreprocessConfig& cfg);

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const PreprocessConfig& cfg);

/// light_suffix strips the longest matching suffix once, if the remainder
/// keeps at least 2 codepoints. An optional ZWNJ before the suffix is
/// stripped with it.
std::vector<std::string> stem(const std::vector<std::string>& tokens,
                              const PreprocessConfig& cfg);
std::string stem_word(const std::string& token, const PreprocessConfig& cfg);

/// normalize -> tokenize -> remove_stopwords -> stem.
std::vector<std::string> run_pipeline(const std::string& raw_text,
                                      const PreprocessConfig& cfg);

/// Stop-word file: UTF-8, one word per line, '#' comments. Words are
/// normalized on load.
std::unordered_set<std::string> load_stopwords(const std::string& path);

/// Suffix table: UTF-8, one suffix per line, '#' comments, priority = order.
std::vector<std::string> load_suffixes(const std::string& path);

/// Built-in suffix table used when no file is given.
std::vector<std::string> default_suffixes();

}  // namespace tct::preprocess
