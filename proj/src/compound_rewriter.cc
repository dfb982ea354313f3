// Copyright 2026 The Noncomp Authors.
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

#include "noncomp/compound_rewriter.h"

#include <vector>

#include "noncomp/text_io.h"

namespace noncomp {

CompoundRewriter::CompoundRewriter(std::span<const Compound> compounds) {
  for (const auto &c : compounds) {
    compounds_.insert({ToLower(c.w1), ToLower(c.w2)});
  }
}

std::string CompoundRewriter::RewriteLine(std::string_view line,
                                          size_t *joined) const {
  std::vector<std::string_view> tokens = Split(line, ' ');
  std::string out;
  out.reserve(line.size());
  size_t i = 0;
  while (i < tokens.size()) {
    if (i > 0) out += ' ';
    if (i + 1 < tokens.size() && !tokens[i].empty() && !tokens[i + 1].empty() &&
        compounds_.contains(Compound{ToLower(tokens[i]), ToLower(tokens[i + 1])})) {
      out += tokens[i];
      out += '_';
      out += tokens[i + 1];
      if (joined != nullptr) ++*joined;
      i += 2;
    } else {
      out += tokens[i];
      ++i;
    }
  }
  return out;
}

size_t CompoundRewriter::Rewrite(std::istream &in, std::ostream &out) const {
  size_t joined = 0;
  std::string line;
  while (std::getline(in, line)) out << RewriteLine(line, &joined) << '\n';
  return joined;
}

}  // namespace noncomp
