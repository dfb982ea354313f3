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

#include "noncomp/feature_io.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "noncomp/text_io.h"

namespace noncomp {
namespace {

[[noreturn]] void FormatError(const std::filesystem::path &path, size_t line,
                              const std::string &what) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " +
                           what);
}

}  // namespace

std::string FormatFeatureMatrix(const FeatureMatrix &matrix) {
  std::ostringstream out;
  out << "w1\tw2";
  for (const auto &name : matrix.feature_names()) out << '\t' << name;
  out << "\tflags\n";
  for (size_t r = 0; r < matrix.rows(); ++r) {
    out << matrix.compound(r).w1 << '\t' << matrix.compound(r).w2;
    for (size_t c = 0; c < matrix.cols(); ++c) {
      out << '\t' << FormatDouble(matrix.at(r, c));
    }
    out << '\t';
    const auto &flags = matrix.flags(r);
    if (flags.empty()) out << '-';
    for (size_t i = 0; i < flags.size(); ++i) out << (i ? "," : "") << flags[i];
    out << '\n';
  }
  return out.str();
}

void WriteFeatureMatrix(const FeatureMatrix &matrix,
                        const std::filesystem::path &path) {
  WriteFileAtomically(path, FormatFeatureMatrix(matrix));
}

FeatureMatrix ReadFeatureMatrix(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  size_t lineno = 0;
  FeatureMatrix matrix;
  bool have_header = false;
  bool has_flags = false;
  size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = StripCr(line);
    if (view.empty()) continue;
    auto fields = Split(view, '\t');
    if (!have_header) {
      if (fields.size() < 2 || fields[0] != "w1" || fields[1] != "w2") {
        FormatError(path, lineno, "expected header 'w1<TAB>w2<TAB>...'");
      }
      has_flags = fields.back() == "flags";
      std::vector<std::string> names(fields.begin() + 2,
                                     fields.end() - (has_flags ? 1 : 0));
      matrix = FeatureMatrix(std::move(names));
      width = fields.size();
      have_header = true;
      continue;
    }
    if (fields.size() != width) {
      FormatError(path, lineno, "expected " + std::to_string(width) +
                                    " columns, found " +
                                    std::to_string(fields.size()));
    }
    std::vector<double> values(matrix.cols());
    for (size_t c = 0; c < matrix.cols(); ++c) {
      if (!ParseDouble(fields[c + 2], &values[c])) {
        FormatError(path, lineno,
                    "malformed number '" + std::string(fields[c + 2]) + "'");
      }
    }
    std::vector<std::string> flags;
    if (has_flags && fields.back() != "-") {
      for (auto f : Split(fields.back(), ',')) {
        if (!f.empty()) flags.emplace_back(f);
      }
    }
    matrix.AddRow({std::string(fields[0]), std::string(fields[1])},
                  std::move(values), std::move(flags));
  }
  if (!have_header) throw std::runtime_error(path.string() + ": empty file");
  return matrix;
}

void WriteGaussianParams(const GaussianParams &params,
                         const std::filesystem::path &path) {
  std::ostringstream out;
  out << "# feature mu sigma2 transform\n";
  for (size_t i = 0; i < params.size(); ++i) {
    out << params.features[i] << ' ' << FormatDouble(params.mu[i]) << ' '
        << FormatDouble(params.sigma2[i]) << ' '
        << TransformName(params.transforms[i]);
    if (params.transforms[i] == Transform::kLog && params.log_shifts[i] != 0) {
      out << '@' << FormatDouble(params.log_shifts[i]);
    }
    out << '\n';
  }
  WriteFileAtomically(path, out.str());
}

GaussianParams ReadGaussianParams(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  GaussianParams params;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view = StripCr(line);
    if (view.empty() || view.front() == '#') continue;
    auto fields = SplitWhitespace(view);
    double mu, sigma2;
    if (fields.size() != 4 || !ParseDouble(fields[1], &mu) ||
        !ParseDouble(fields[2], &sigma2)) {
      FormatError(path, lineno, "expected 'feature mu sigma2 transform'");
    }
    if (!(sigma2 > 0)) FormatError(path, lineno, "sigma2 must be positive");
    std::string_view t = fields[3];
    Transform transform;
    double shift = 0;
    if (t == "none") {
      transform = Transform::kNone;
    } else if (t == "gaussianize") {
      transform = Transform::kGaussianize;
    } else if (t == "log") {
      transform = Transform::kLog;
    } else if (t.starts_with("log@") && ParseDouble(t.substr(4), &shift)) {
      transform = Transform::kLog;
    } else {
      FormatError(path, lineno, "unknown transform '" + std::string(t) + "'");
    }
    params.features.emplace_back(fields[0]);
    params.mu.push_back(mu);
    params.sigma2.push_back(sigma2);
    params.transforms.push_back(transform);
    params.log_shifts.push_back(shift);
  }
  if (params.features.empty()) {
    throw std::runtime_error(path.string() + ": no parameters");
  }
  return params;
}

}  // namespace noncomp
