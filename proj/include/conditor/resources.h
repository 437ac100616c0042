// Copyright 2026 The Conditor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CONDITOR_RESOURCES_H_
#define CONDITOR_RESOURCES_H_

#include <filesystem>
#include <set>
#include <string>
#include <string_view>

namespace conditor {

namespace embedded {
extern const std::string_view k_default_rules;
extern const std::string_view k_abbreviations_txt;
extern const std::string_view k_stopwords_txt;
extern const std::string_view k_connectives_txt;
extern const std::string_view k_default_descriptor;
}  // namespace embedded

// A word list: UTF-8, one entry per line, '#' starts a comment.
class Lexicon {
 public:
  Lexicon() = default;

  static Lexicon parse(std::string_view text);
  static Lexicon from_file(const std::filesystem::path &path);

  bool contains(std::string_view word) const { return words_.count(std::string(word)) != 0; }
  std::size_t size() const { return words_.size(); }
  const std::set<std::string> &words() const { return words_; }
  void insert(std::string word) { words_.insert(std::move(word)); }

 private:
  std::set<std::string> words_;
};

// Shared word lists used by segmentation, title analysis and scoring.
struct TextResources {
  // Case-sensitive surface forms that do not end a sentence.
  Lexicon abbreviations;
  // Folded forms.
  Lexicon stopwords;
  // Folded name connectives ("ibn", "al", ...).
  Lexicon connectives;

  static const TextResources &defaults();
};

std::string read_file(const std::filesystem::path &path);

}  // namespace conditor

#endif  // CONDITOR_RESOURCES_H_
