// Copyright 2026 The armform Authors
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

#ifndef ARMFORM_EXPRESSION_HPP_
#define ARMFORM_EXPRESSION_HPP_

#include <string_view>

namespace armform {

// Evaluates a constant arithmetic expression such as "2*pi/3" or
// "0.4*sqrt(2)". Supports + - * / ^, parentheses, unary signs, the constant
// pi and the functions sqrt, sin, cos. Numeric literals are read with
// strtod, so a literal printed with 17 significant digits reads back
// exactly. Throws armform::Error on malformed input.
double evaluate_expression(std::string_view text);

}  // namespace armform

#endif  // ARMFORM_EXPRESSION_HPP_
