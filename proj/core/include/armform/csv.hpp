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

// SimLog <-> CSV. Columns: t; per arm i (1-based)
// a<i>_q1, a<i>_q2, a<i>_xi1, a<i>_xi2, a<i>_x, a<i>_y, a<i>_u1, a<i>_u2,
// a<i>_ud1, a<i>_ud2, a<i>_d1, a<i>_d2; per edge k e<k> (distance) or
// e<k>_x, e<k>_y (displacement); then V, U, margin. Values use 17
// significant digits.

#ifndef ARMFORM_CSV_HPP_
#define ARMFORM_CSV_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "armform/engine.hpp"

namespace armform {

std::vector<std::string> csv_columns(const SimLog& log);
void write_csv(const SimLog& log, std::ostream& out);
std::string to_csv(const SimLog& log);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  // Index of a column; throws armform::Error when absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
  std::vector<double> values(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);

}  // namespace armform

#endif  // ARMFORM_CSV_HPP_
