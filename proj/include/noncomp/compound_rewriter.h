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

#ifndef NONCOMP_COMPOUND_REWRITER_H_
#define NONCOMP_COMPOUND_REWRITER_H_

#include <istream>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include "noncomp/multivariate.h"

namespace noncomp {

// Joins listed compounds into single "w1_w2" tokens so that an external
// tool can learn phrase vectors for them. Matching is case-insensitive and
// scans left to right without overlaps: in "a b c" with compounds (a,b) and
// (b,c) only "a_b" is produced. Tokens are separated by single spaces; any
// line without a match is emitted unchanged.
class CompoundRewriter {
 public:
  explicit CompoundRewriter(std::span<const Compound> compounds);

  // `joined`, when given, is incremented once per joined compound.
  std::string RewriteLine(std::string_view line, size_t *joined = nullptr) const;
  // Returns the number of compounds joined.
  size_t Rewrite(std::istream &in, std::ostream &out) const;

 private:
  std::set<Compound, std::less<>> compounds_;
};

}  // namespace noncomp

#endif  // NONCOMP_COMPOUND_REWRITER_H_
