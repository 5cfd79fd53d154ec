// Copyright 2026 The mdiew Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MDIEW_FORMAT_HPP
#define MDIEW_FORMAT_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "mdiew/qcore.hpp"

namespace mdiew {

/// Scientific notation with 16 significant digits ("-6.666666666666666e-01").
std::string format_decimal(double value);

/// Matrix file format: array of rows, each entry a [re, im] pair.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

ComplexMatrix read_matrix_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace mdiew

#endif  // MDIEW_FORMAT_HPP
