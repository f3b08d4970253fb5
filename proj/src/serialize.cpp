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

#include "photoprune/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "photoprune/errors.hpp"

namespace photoprune {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string matrix_to_json(const ComplexMatrix &u) {
    if (u.rows() != u.cols()) {
        throw InvalidArgument("matrix_to_json: only square matrices are serialized");
    }
    std::ostringstream os;
    auto part = [&](bool imag) {
        os << '[';
        for (Eigen::Index i = 0; i < u.rows(); ++i) {
            os << (i ? "," : "") << '[';
            for (Eigen::Index j = 0; j < u.cols(); ++j) {
                os << (j ? "," : "") << format_double(imag ? u(i, j).imag() : u(i, j).real());
            }
            os << ']';
        }
        os << ']';
    };
    os << "{\"n\":" << u.rows() << ",\"re\":";
    part(false);
    os << ",\"im\":";
    part(true);
    os << "}\n";
    return os.str();
}

namespace {

nlohmann::json parse_json(const std::string &text, const char *what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw InvalidArgument(std::string(what) + ": malformed JSON: " + e.what());
    }
}

}  // namespace

ComplexMatrix matrix_from_json(const std::string &text) {
    const nlohmann::json j = parse_json(text, "matrix_from_json");
    try {
        const int n = j.at("n").get<int>();
        if (n < 1) throw InvalidArgument("matrix_from_json: n must be >= 1");
        const auto &re = j.at("re");
        const auto &im = j.at("im");
        if (re.size() != static_cast<std::size_t>(n) || im.size() != static_cast<std::size_t>(n)) {
            throw InvalidArgument("matrix_from_json: row count does not match n");
        }
        ComplexMatrix u(n, n);
        for (int r = 0; r < n; ++r) {
            if (re[r].size() != static_cast<std::size_t>(n) || im[r].size() != static_cast<std::size_t>(n)) {
                throw InvalidArgument("matrix_from_json: column count does not match n");
            }
            for (int c = 0; c < n; ++c) {
                u(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
            }
        }
        return u;
    } catch (const nlohmann::json::exception &e) {
        throw InvalidArgument(std::string("matrix_from_json: ") + e.what());
    }
}

std::string plan_to_json(const MeshPlan &plan) {
    std::ostringstream os;
    os << "{\"n\":" << plan.n << ",\"blocks\":[";
    for (std::size_t k = 0; k < plan.blocks.size(); ++k) {
        const Block &b = plan.blocks[k];
        os << (k ? "," : "") << "{\"m\":" << b.m << ",\"l\":" << b.l
           << ",\"theta\":" << format_double(b.theta) << ",\"phi\":" << format_double(b.phi) << '}';
    }
    os << "],\"diag\":[";
    for (std::size_t k = 0; k < plan.diag_phases.size(); ++k) {
        const Complex d = plan.diag_phases[k];
        os << (k ? "," : "") << "{\"re\":" << format_double(d.real()) << ",\"im\":" << format_double(d.imag())
           << '}';
    }
    os << "]}\n";
    return os.str();
}

MeshPlan plan_from_json(const std::string &text) {
    const nlohmann::json j = parse_json(text, "plan_from_json");
    MeshPlan plan;
    try {
        plan.n = j.at("n").get<int>();
        for (const auto &b : j.at("blocks")) {
            plan.blocks.push_back(
                {b.at("m").get<int>(), b.at("l").get<int>(), b.at("theta").get<double>(), b.at("phi").get<double>()});
        }
        for (const auto &d : j.at("diag")) {
            plan.diag_phases.emplace_back(d.at("re").get<double>(), d.at("im").get<double>());
        }
    } catch (const nlohmann::json::exception &e) {
        throw InvalidArgument(std::string("plan_from_json: ") + e.what());
    }
    validate_plan(plan);
    return plan;
}

namespace {

std::string cell_text(const Table::Cell &cell) {
    if (const auto *s = std::get_if<std::string>(&cell)) return *s;
    if (const auto *d = std::get_if<double>(&cell)) return format_double(*d);
    return std::to_string(std::get<long long>(cell));
}

}  // namespace

void write_csv(std::ostream &os, const Table &table, const std::string &metadata) {
    os << "# " << metadata << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        os << (c ? "," : "") << table.columns[c];
    }
    os << '\n';
    for (const auto &row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << (c ? "," : "") << cell_text(row[c]);
        }
        os << '\n';
    }
}

void write_table_json(std::ostream &os, const Table &table, const std::string &metadata) {
    nlohmann::json j;
    j["metadata"] = metadata;
    j["columns"] = table.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &row : table.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto &cell : row) {
            if (const auto *s = std::get_if<std::string>(&cell)) {
                r.push_back(*s);
            } else if (const auto *d = std::get_if<double>(&cell)) {
                if (std::isfinite(*d)) {
                    r.push_back(*d);
                } else {
                    r.push_back(format_double(*d));
                }
            } else {
                r.push_back(std::get<long long>(cell));
            }
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    os << j.dump(1) << '\n';
}

}  // namespace photoprune
