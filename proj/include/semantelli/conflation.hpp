#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace semantelli {

struct Token {
  std::string text;
  std::size_t position = 0;

  bool operator==(const Token&) const = default;
};

/// Ordered, stemmed keywords of a query or a snippet. Duplicates are kept:
/// matching counts every snippet position.
class KeywordSequence {
 public:
  KeywordSequence() = default;
  explicit KeywordSequence(std::vector<std::string> keywords)
      : keywords_(std::move(keywords)) {}

  const std::vector<std::string>& keywords() const noexcept { return keywords_; }
  std::size_t count() const noexcept { return keywords_.size(); }
  bool empty() const noexcept { return keywords_.empty(); }
  const std::string& operator[](std::size_t i) const { return keywords_[i]; }

  auto begin() const noexcept { return keywords_.begin(); }
  auto end() const noexcept { return keywords_.end(); }

  /// Keywords joined by single spaces; the form sent to backends.
  std::string joined() const;

  bool operator==(const KeywordSequence&) const = default;

 private:
  std::vector<std::string> keywords_;
};

class StopWordList {
 public:
  StopWordList() = default;
  explicit StopWordList(std::unordered_set<std::string> words);

  /// Parses the one-word-per-line format. '#' lines and blank lines are
  /// skipped; entries are lowercased.
  static StopWordList parse(std::string_view text);
  /// Throws Error{NotFound} when the file cannot be opened.
  static StopWordList load(const std::filesystem::path& path);
  /// The shipped list (data/stopwords.txt compiled in).
  static const StopWordList& english();

  bool contains(std::string_view word) const;
  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }

 private:
  std::unordered_set<std::string> words_;
};

std::vector<Token> tokenize(std::string_view text);

std::vector<Token> remove_stop_words(const std::vector<Token>& tokens,
                                     const StopWordList& stops);

/// Porter (1980) suffix stripping. Input must be lowercase ASCII letters or
/// digits; anything that is not a plain lowercase word is returned as is.
std::string stem(std::string_view word);

KeywordSequence conflate(std::string_view text, const StopWordList& stops);

}  // namespace semantelli
