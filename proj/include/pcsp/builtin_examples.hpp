// Copyright 2026 The pcsp Authors
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

#ifndef PCSP_BUILTIN_EXAMPLES_HPP
#define PCSP_BUILTIN_EXAMPLES_HPP

#include <string_view>

#include "pcsp/affine.hpp"
#include "pcsp/relstruct.hpp"

namespace pcsp {

// The bundled Boolean pair with its size-3 affine middle: A carries one
// 6-ary relation of three tuples, B its relaxation (all 6-bit tuples except
// the four excluded ones), and C the affine closure of A's relation over
// Z_3. Shipped as embedded canonical documents so verify-example and
// dump-paper-structures work without any input files.

std::string_view example_a_document();
std::string_view example_b_document();
std::string_view example_c_document();

const Structure& example_a();
const Structure& example_b();
const Structure& example_c();

// The collapsing map {0,1,2} -> {0,1} sending 0 and 2 to 0.
const DomainMap& example_c_to_b();

// Four equations over Z_3 whose solution set is C's relation.
const AffinePresentation& example_presentation();

}  // namespace pcsp

#endif  // PCSP_BUILTIN_EXAMPLES_HPP
