/**
 * Copyright 2026 The qnr-herald Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace qnr {

/// Empty cells are written as "" in CSV and null in JSON.
using Cell = std::variant<std::monostate, std::int64_t, std::uint64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::size_t column_index(const std::string& name) const;
};

/// 12 significant digits; scientific notation when 0 < |x| < 1e-4.
std::string format_number(double x);
std::string format_cell(const Cell& cell);

void write_csv(const Table& table, std::ostream& out);

/// Array of row objects keyed by column name.
void write_json(const Table& table, std::ostream& out);

enum class OutputFormat { Csv, Json };

void write_table(const Table& table, OutputFormat format, std::ostream& out);

/// Header plus raw string cells of a CSV produced by write_csv.
struct CsvData {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  const std::string& at(std::size_t row, const std::string& column) const;
};

CsvData parse_csv(std::istream& in);

}  // namespace qnr
