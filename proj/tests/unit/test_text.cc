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

#include "doctest.h"

#include "conditor/resources.h"
#include "conditor/text.h"
#include "conditor/xml.h"
#include "generators.h"

using namespace conditor;

TEST_CASE("utf8 decode and encode are inverse") {
  const std::string s = "Albarracín ñ \xF0\x9F\x98\x80 €";
  const std::u32string cps = decode_utf8(s);
  CHECK(cps.size() == utf8_length(s));
  CHECK(encode_utf8(cps) == s);
  CHECK(cps[8] == U'í');
}

TEST_CASE("malformed utf8 is rejected") {
  for (const std::string &bad : {std::string("\xC3"), std::string("\xC0\xAF"),
                                std::string("\xED\xA0\x80"), std::string("a\xFF"),
                                std::string("\xF4\x90\x80\x80")}) {
    CHECK_FALSE(is_valid_utf8(bad));
    CHECK_THROWS_AS(decode_utf8(bad), EncodingError);
  }
  CHECK(is_valid_utf8(""));
}

TEST_CASE("Utf8Index maps code points to bytes") {
  const std::string s = "añ€x";
  const Utf8Index idx(s);
  CHECK(idx.size() == 4);
  CHECK(idx.byte_of(0) == 0);
  CHECK(idx.byte_of(2) == 3);
  CHECK(idx.byte_of(3) == 6);
  CHECK(idx.byte_of(4) == 7);
  CHECK(idx.cp_of(4) == 2);
  CHECK(idx.slice({1, 3}) == "ñ€");
  CHECK(idx.at(2) == U'€');
}

TEST_CASE("fold lowercases and strips diacritics but keeps n-tilde") {
  CHECK(fold("Albarracín") == "albarracin");
  CHECK(fold("ÁÉÍÓÚÜ") == "aeiouu");
  CHECK(fold("Ñuño") == "ñuño");
  CHECK(fold("Musà") == "musa");
  CHECK(to_lower("MURIÓ") == "murió");
}

TEST_CASE("fold is idempotent") {
  testing::Gen gen(11);
  for (int i = 0; i < 500; ++i) {
    const std::string w = gen.word(gen.coin());
    CHECK(fold(fold(w)) == fold(w));
  }
}

TEST_CASE("whitespace helpers") {
  CHECK(trim("  a b \n") == "a b");
  CHECK(collapse_whitespace(" a \t\n b  c ") == "a b c");
  CHECK(collapse_whitespace("") == "");
}

TEST_CASE("character classes") {
  CHECK(is_letter(U'ñ'));
  CHECK(is_upper(U'Á'));
  CHECK_FALSE(is_upper(U'á'));
  CHECK(is_word_char(U'7'));
  CHECK_FALSE(is_word_char(U'-'));
  CHECK(is_space(U' '));
}

TEST_CASE("xml escaping survives a parse") {
  testing::Gen gen(5);
  for (int i = 0; i < 300; ++i) {
    const std::string text = gen.xml_text(12);
    const std::string attr = gen.xml_text(6);
    const std::string doc = "<r a=\"" + xml::escape_attribute(attr) + "\">" + xml::escape_text(text) + "</r>";
    const auto root = xml::parse(doc);
    CHECK(root->text == text);
    REQUIRE(root->attribute("a") != nullptr);
    CHECK(*root->attribute("a") == attr);
  }
}

TEST_CASE("xml parse errors carry a position") {
  try {
    xml::parse("<a>\n<b></a>");
    FAIL("expected a parse error");
  } catch (const xml::ParseError &e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("lexicons skip comments and blank lines") {
  const Lexicon l = Lexicon::parse("# header\nuno\n\n  dos  \n# tres\n");
  CHECK(l.size() == 2);
  CHECK(l.contains("uno"));
  CHECK(l.contains("dos"));
  CHECK_FALSE(l.contains("tres"));
  CHECK(TextResources::defaults().connectives.contains("ibn"));
  CHECK(TextResources::defaults().stopwords.contains("de"));
}
