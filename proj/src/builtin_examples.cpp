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

#include "pcsp/builtin_examples.hpp"

namespace pcsp {

namespace {

constexpr std::string_view kExampleA = R"(domain 2
rel R 6
0 0 1 1 1 0
0 1 0 1 0 1
1 0 0 0 1 1
end
)";

// All 6-bit tuples except 000000, 000111, 111000 and 111111.
constexpr std::string_view kExampleB = R"(domain 2
rel R 6
0 0 0 0 0 1
0 0 0 0 1 0
0 0 0 0 1 1
0 0 0 1 0 0
0 0 0 1 0 1
0 0 0 1 1 0
0 0 1 0 0 0
0 0 1 0 0 1
0 0 1 0 1 0
0 0 1 0 1 1
0 0 1 1 0 0
0 0 1 1 0 1
0 0 1 1 1 0
0 0 1 1 1 1
0 1 0 0 0 0
0 1 0 0 0 1
0 1 0 0 1 0
0 1 0 0 1 1
0 1 0 1 0 0
0 1 0 1 0 1
0 1 0 1 1 0
0 1 0 1 1 1
0 1 1 0 0 0
0 1 1 0 0 1
0 1 1 0 1 0
0 1 1 0 1 1
0 1 1 1 0 0
0 1 1 1 0 1
0 1 1 1 1 0
0 1 1 1 1 1
1 0 0 0 0 0
1 0 0 0 0 1
1 0 0 0 1 0
1 0 0 0 1 1
1 0 0 1 0 0
1 0 0 1 0 1
1 0 0 1 1 0
1 0 0 1 1 1
1 0 1 0 0 0
1 0 1 0 0 1
1 0 1 0 1 0
1 0 1 0 1 1
1 0 1 1 0 0
1 0 1 1 0 1
1 0 1 1 1 0
1 0 1 1 1 1
1 1 0 0 0 0
1 1 0 0 0 1
1 1 0 0 1 0
1 1 0 0 1 1
1 1 0 1 0 0
1 1 0 1 0 1
1 1 0 1 1 0
1 1 0 1 1 1
1 1 1 0 0 1
1 1 1 0 1 0
1 1 1 0 1 1
1 1 1 1 0 0
1 1 1 1 0 1
1 1 1 1 1 0
end
)";

// The affine closure of A's relation over Z_3.
constexpr std::string_view kExampleC = R"(domain 3
rel R 6
0 0 1 1 1 0
0 1 0 1 0 1
0 2 2 1 2 2
1 0 0 0 1 1
1 1 2 0 0 2
1 2 1 0 2 0
2 0 2 2 1 2
2 1 1 2 0 0
2 2 0 2 2 1
end
)";

}  // namespace

std::string_view example_a_document() { return kExampleA; }
std::string_view example_b_document() { return kExampleB; }
std::string_view example_c_document() { return kExampleC; }

const Structure& example_a() {
  static const Structure a = parse_structure(std::string(kExampleA));
  return a;
}

const Structure& example_b() {
  static const Structure b = parse_structure(std::string(kExampleB));
  return b;
}

const Structure& example_c() {
  static const Structure c = parse_structure(std::string(kExampleC));
  return c;
}

const DomainMap& example_c_to_b() {
  static const DomainMap g{3, 2, {0, 1, 0}};
  return g;
}

const AffinePresentation& example_presentation() {
  static const AffinePresentation pres{
      3,
      6,
      {{{1, 1, 1, 0, 0, 0}, 1},
       {{1, 0, 0, 1, 0, 0}, 1},
       {{0, 1, 0, 0, 1, 0}, 1},
       {{0, 0, 1, 0, 0, 1}, 1}}};
  return pres;
}

}  // namespace pcsp
