#include "semantelli/conflation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "semantelli/error.hpp"
#include "semantelli_default_data.hpp"

namespace semantelli {
namespace {

// Bytes >= 0x80 belong to UTF-8 multibyte sequences and are kept inside
// words so non-ASCII letters do not split a token.
bool word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80;
}

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), ascii_lower);
  return out;
}

}  // namespace

std::string KeywordSequence::joined() const {
  std::string out;
  for (const auto& k : keywords_) {
    if (!out.empty()) out.push_back(' ');
    out += k;
  }
  return out;
}

StopWordList::StopWordList(std::unordered_set<std::string> words) {
  for (const auto& w : words) words_.insert(lowercase(w));
}

StopWordList StopWordList::parse(std::string_view text) {
  std::unordered_set<std::string> words;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    words.insert(lowercase(std::string_view(line).substr(first, last - first + 1)));
  }
  return StopWordList(std::move(words));
}

StopWordList StopWordList::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::NotFound, "stop-word list " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const StopWordList& StopWordList::english() {
  static const StopWordList list = parse(data::kStopWords);
  return list;
}

bool StopWordList::contains(std::string_view word) const {
  return words_.contains(lowercase(word));
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !word_byte(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && word_byte(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.push_back({lowercase(text.substr(start, i - start)), tokens.size()});
  }
  return tokens;
}

std::vector<Token> remove_stop_words(const std::vector<Token>& tokens, const StopWordList& stops) {
  std::vector<Token> kept;
  kept.reserve(tokens.size());
  std::copy_if(tokens.begin(), tokens.end(), std::back_inserter(kept),
               [&](const Token& t) { return !stops.contains(t.text); });
  return kept;
}

KeywordSequence conflate(std::string_view text, const StopWordList& stops) {
  std::vector<std::string> keywords;
  for (const auto& token : remove_stop_words(tokenize(text), stops)) {
    // A handful of inflected forms stem onto a stop word ("hes" -> "he").
    auto keyword = stem(token.text);
    if (!stops.contains(keyword)) keywords.push_back(std::move(keyword));
  }
  return KeywordSequence(std::move(keywords));
}

}  // namespace semantelli
