#include "tct/preprocess.hpp"

#include <fstream>

#include "tct/error.hpp"
#include "tct/unicode.hpp"

namespace uni = tct::unicode;

namespace tct::preprocess {

namespace {

// Arabic-script canonical compositions relevant to NFC: hamza/madda
// combining marks fused onto their base letter.
char32_t compose(char32_t base, char32_t mark) {
  if (mark == 0x0653 && base == 0x0627) return 0x0622;  // alef + madda
  if (mark == 0x0654) {
    if (base == 0x0627) return 0x0623;  // alef + hamza above
    if (base == 0x0648) return 0x0624;  // waw + hamza
    if (base == 0x064A || base == 0x06CC) return 0x0626;  // yeh + hamza
    if (base == 0x06D5) return 0x06C0;  // heh goal + hamza
  }
  if (mark == 0x0655 && base == 0x0627) return 0x0625;  // alef + hamza below
  return 0;
}

char32_t fold(char32_t cp, const PreprocessConfig* cfg) {
  if (cfg) {
    for (const auto& [from, to] : cfg->normalization_map)
      if (cp == from) return fold(to, nullptr);
  }
  switch (cp) {
    case 0x064A: return 0x06CC;  // Arabic Yeh -> Persian Yeh
    case 0x0643: return 0x06A9;  // Arabic Kaf -> Persian Kaf
    default: break;
  }
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  return cp;
}

}  // namespace

std::string normalize(const std::string& text, const PreprocessConfig& cfg) {
  std::u32string in = uni::decode_utf8(text);
  std::u32string out;
  out.reserve(in.size());
  bool pending_space = false;
  for (size_t i = 0; i < in.size(); ++i) {
    char32_t cp = in[i];
    if (i + 1 < in.size()) {
      if (char32_t c = compose(cp, in[i + 1]); c != 0) {
        cp = c;
        ++i;
      }
    }
    cp = fold(cp, &cfg);
    if (uni::is_whitespace(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(cp);
  }
  return uni::encode_utf8(out);
}

std::string normalize(const std::string& text) {
  static const PreprocessConfig empty;
  return normalize(text, empty);
}

std::vector<std::string> tokenize(const std::string& normalized_text,
                                  const PreprocessConfig& cfg) {
  std::u32string in = uni::decode_utf8(normalized_text);
  std::vector<std::string> tokens;
  std::u32string cur;
  auto flush = [&] {
    // ZWNJ only binds between morphemes; trim it from the edges.
    size_t b = 0, e = cur.size();
    while (b < e && cur[b] == uni::kZwnj) ++b;
    while (e > b && cur[e - 1] == uni::kZwnj) --e;
    if (e > b) tokens.push_back(uni::encode_utf8(cur.substr(b, e - b)));
    cur.clear();
  };
  for (char32_t cp : in) {
    if (uni::is_word_char(cp)) {
      if (cfg.strip_digits && uni::is_digit(cp)) continue;
      cur.push_back(cp);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> tokenize(const std::string& normalized_text) {
  static const PreprocessConfig empty;
  return tokenize(normalized_text, empty);
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const PreprocessConfig& cfg) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens)
    if (!cfg.stopwords.count(t)) out.push_back(t);
  return out;
}

std::string stem_word(const std::string& token, const PreprocessConfig& cfg) {
  if (cfg.stemmer != Stemmer::light_suffix) return token;
  std::u32string word = uni::decode_utf8(token);
  size_t best_cut = 0;  // codepoints removed from the end
  for (const auto& suf : cfg.suffixes) {
    std::u32string s = uni::decode_utf8(suf);
    if (s.empty() || s.size() >= word.size()) continue;
    if (word.compare(word.size() - s.size(), s.size(), s) != 0) continue;
    size_t cut = s.size();
    // A ZWNJ joining the suffix goes with it.
    if (word.size() > cut && word[word.size() - cut - 1] == uni::kZwnj) ++cut;
    if (word.size() - cut < 2) continue;
    if (cut > best_cut) best_cut = cut;
  }
  if (best_cut == 0) return token;
  return uni::encode_utf8(word.substr(0, word.size() - best_cut));
}

std::vector<std::string> stem(const std::vector<std::string>& tokens,
                              const PreprocessConfig& cfg) {
  if (cfg.stemmer == Stemmer::none) return tokens;
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(stem_word(t, cfg));
  return out;
}

std::vector<std::string> run_pipeline(const std::string& raw_text,
                                      const PreprocessConfig& cfg) {
  return stem(remove_stopwords(tokenize(normalize(raw_text, cfg), cfg), cfg), cfg);
}

namespace {

std::vector<std::string> read_word_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string w = normalize(line);
    if (!w.empty()) words.push_back(w);
  }
  return words;
}

}  // namespace

std::unordered_set<std::string> load_stopwords(const std::string& path) {
  auto words = read_word_lines(path);
  return {words.begin(), words.end()};
}

std::vector<std::string> load_suffixes(const std::string& path) {
  return read_word_lines(path);
}

std::vector<std::string> default_suffixes() {
  // Persian plural and comparative/superlative suffixes plus possessive
  // clitics, longest listed first.
  return {"هایی", "های", "ها", "ترین", "تر", "ان", "شان", "تان", "مان"};
}

}  // namespace tct::preprocess
