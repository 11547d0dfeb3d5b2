// Copyright 2026 The bhc Authors.
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

#ifndef BHC_COMMON_HPP
#define BHC_COMMON_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace bhc {

enum class scalar_field { real, complex };

inline std::string to_string(scalar_field f) {
  return f == scalar_field::real ? "real" : "complex";
}

inline scalar_field parse_field(std::string_view s) {
  if (s == "real") return scalar_field::real;
  if (s == "complex") return scalar_field::complex;
  throw std::invalid_argument("unknown field: " + std::string(s));
}

}  // namespace bhc

#endif  // BHC_COMMON_HPP
