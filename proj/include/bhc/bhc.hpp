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

// Everything except the report layer, which pulls in the JSON dependency.

#ifndef BHC_BHC_HPP
#define BHC_BHC_HPP

#include "bhc/common.hpp"
#include "bhc/exponents.hpp"
#include "bhc/rational.hpp"
#include "bhc/recursion.hpp"
#include "bhc/search.hpp"
#include "bhc/special_fn.hpp"
#include "bhc/tensor.hpp"
#include "bhc/verify.hpp"

#endif  // BHC_BHC_HPP
