// Copyright 2026 The photoprune Authors
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

#ifndef PHOTOPRUNE_SERIALIZE_HPP
#define PHOTOPRUNE_SERIALIZE_HPP

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "photoprune/mesh.hpp"
#include "photoprune/unitary.hpp"

namespace photoprune {

inline constexpr const char *kVersion = "0.1.0";

/// Shortest form that is still 17 significant digits ("%.17g").
std::string format_double(double v);

/// {"n": n, "re": [[...]], "im": [[...]]}, rows outermost.
std::string matrix_to_json(const ComplexMatrix &u);
ComplexMatrix matrix_from_json(const std::string &text);

/// {"n": n, "blocks": [{"m", "l", "theta", "phi"}...], "diag": [{"re", "im"}...]}
/// with blocks in application order.
std::string plan_to_json(const MeshPlan &plan);
MeshPlan plan_from_json(const std::string &text);

/// A result table shared by the CSV and JSON writers.
struct Table {
    using Cell = std::variant<std::string, double, long long>;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Writes "# <metadata>", the header row, then the rows.
void write_csv(std::ostream &os, const Table &table, const std::string &metadata);

/// {"metadata": ..., "columns": [...], "rows": [[...]]}
void write_table_json(std::ostream &os, const Table &table, const std::string &metadata);

}  // namespace photoprune

#endif
