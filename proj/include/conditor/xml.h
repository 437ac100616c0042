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

// Minimal element tree built on expat. Namespaces are not processed:
// prefixed names such as "xlink:href" are kept verbatim.

#ifndef CONDITOR_XML_H_
#define CONDITOR_XML_H_

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace conditor::xml {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &message, long line, long column)
      : std::runtime_error(message + " at line " + std::to_string(line) +
                           ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}

  long line() const { return line_; }
  long column() const { return column_; }

 private:
  long line_;
  long column_;
};

struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<std::unique_ptr<Element>> children;
  // Concatenated character data directly inside this element.
  std::string text;
  long line = 0;
  long column = 0;

  const std::string *attribute(std::string_view key) const;
  const Element *child(std::string_view child_name) const;
  std::vector<const Element *> children_named(std::string_view child_name) const;
};

// Parses a complete document. Throws ParseError on malformed input.
std::unique_ptr<Element> parse(std::string_view document);

// Escaping for emitted character data and attribute values.
std::string escape_text(std::string_view text);
std::string escape_attribute(std::string_view text);

}  // namespace conditor::xml

#endif  // CONDITOR_XML_H_
