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

#ifndef NONCOMP_FEATURE_IO_H_
#define NONCOMP_FEATURE_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "noncomp/multivariate.h"

namespace noncomp {

// TSV with header "w1 w2 <feature...> flags"; flags are comma-separated,
// "-" when empty. Numbers use shortest round-trip formatting.
std::string FormatFeatureMatrix(const FeatureMatrix &matrix);
void WriteFeatureMatrix(const FeatureMatrix &matrix,
                        const std::filesystem::path &path);
FeatureMatrix ReadFeatureMatrix(const std::filesystem::path &path);

// One line per feature: "feature mu sigma2 transform", where transform is
// none, log, log@<shift> or gaussianize.
void WriteGaussianParams(const GaussianParams &params,
                         const std::filesystem::path &path);
GaussianParams ReadGaussianParams(const std::filesystem::path &path);

}  // namespace noncomp

#endif  // NONCOMP_FEATURE_IO_H_
