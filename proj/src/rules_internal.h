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

#ifndef CONDITOR_SRC_RULES_INTERNAL_H_
#define CONDITOR_SRC_RULES_INTERNAL_H_

#include <boost/regex/icu.hpp>

#include "conditor/extract.h"

namespace conditor {

enum class Matcher { Regex, AliasTable, MarkerPlaces };

struct CompiledRule {
  RuleSpec spec;
  Matcher matcher = Matcher::Regex;
  boost::u32regex regex;
};

inline constexpr std::string_view kAliasTablePattern = "@alias-table";
inline constexpr std::string_view kMarkerPlacesPattern = "@marker-places";

}  // namespace conditor

#endif  // CONDITOR_SRC_RULES_INTERNAL_H_
