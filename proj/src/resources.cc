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

#include "conditor/resources.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "conditor/text.h"

namespace conditor {

Lexicon Lexicon::parse(std::string_view text) {
  Lexicon lexicon;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::string word = trim(line);
    if (!word.empty()) lexicon.words_.insert(std::move(word));
    pos = eol + 1;
  }
  return lexicon;
}

Lexicon Lexicon::from_file(const std::filesystem::path &path) {
  return parse(read_file(path));
}

const TextResources &TextResources::defaults() {
  static const TextResources resources = [] {
    TextResources r;
    r.abbreviations = Lexicon::parse(embedded::k_abbreviations_txt);
    const Lexicon stopwords = Lexicon::parse(embedded::k_stopwords_txt);
    for (const auto &w : stopwords.words()) r.stopwords.insert(fold(w));
    const Lexicon connectives = Lexicon::parse(embedded::k_connectives_txt);
    for (const auto &w : connectives.words()) r.connectives.insert(fold(w));
    return r;
  }();
  return resources;
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace conditor
