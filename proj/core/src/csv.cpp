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

#include "armform/csv.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace armform {

std::vector<std::string> csv_columns(const SimLog& log) {
  static const char* const kAgentFields[] = {"q1", "q2", "xi1", "xi2", "x",   "y",
                                             "u1", "u2", "ud1", "ud2", "d1", "d2"};
  std::vector<std::string> cols{"t"};
  for (int i = 1; i <= log.agent_count; ++i) {
    for (const char* f : kAgentFields) cols.push_back("a" + std::to_string(i) + "_" + f);
  }
  for (int k = 1; k <= log.edge_count; ++k) {
    if (log.strategy == Strategy::distance) {
      cols.push_back("e" + std::to_string(k));
    } else {
      cols.push_back("e" + std::to_string(k) + "_x");
      cols.push_back("e" + std::to_string(k) + "_y");
    }
  }
  cols.insert(cols.end(), {"V", "U", "margin"});
  return cols;
}

void write_csv(const SimLog& log, std::ostream& out) {
  const std::vector<std::string> cols = csv_columns(log);
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << '\n';
  out << std::setprecision(17);
  for (const LogRow& row : log.rows) {
    out << row.t;
    for (const AgentSample& a : row.agents) {
      for (const Vec2* v : {&a.q, &a.xi, &a.x, &a.u, &a.u_d, &a.d}) {
        out << ',' << (*v)(0) << ',' << (*v)(1);
      }
    }
    for (Eigen::Index k = 0; k < row.edge_errors.size(); ++k) out << ',' << row.edge_errors(k);
    out << ',' << row.potential << ',' << row.lyapunov << ',' << row.margin << '\n';
  }
}

std::string to_csv(const SimLog& log) {
  std::ostringstream out;
  write_csv(log, out);
  return out.str();
}

std::size_t CsvTable::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw Error("csv has no column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

bool CsvTable::has_column(std::string_view name) const {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

std::vector<double> CsvTable::values(std::string_view name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw Error("csv is empty");
  {
    std::istringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) table.columns.push_back(cell);
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    row.reserve(table.columns.size());
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      char* stop = nullptr;
      row.push_back(std::strtod(cell.c_str(), &stop));
      if (stop == cell.c_str() || *stop != '\0') {
        throw Error("csv line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    if (row.size() != table.columns.size()) {
      throw Error("csv line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                  " cells, expected " + std::to_string(table.columns.size()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace armform
