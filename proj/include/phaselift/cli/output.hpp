// Copyright 2026 The phaselift-haar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "phaselift/cli/config.hpp"

namespace phaselift::cli {

/// Empty cell (monostate) is written as an empty CSV field and JSON null.
using Cell = std::variant<std::monostate, std::int64_t, std::uint64_t, double, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// Shortest round-trip decimal form (std::to_chars); "nan", "inf", "-inf".
std::string format_double(double v);

void write_csv(std::ostream& os, const Table& t);
/// Array of row objects keyed by column name, in column order.
nlohmann::ordered_json table_to_json(const Table& t);
void write_table(std::ostream& os, const Table& t, Format f);

}  // namespace phaselift::cli
