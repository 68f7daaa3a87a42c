// Copyright 2026 The tsaudit Authors
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

#include "tsaudit/data/csv.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <system_error>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "tsaudit/core/file_io.h"
#include "tsaudit/core/status_macros.h"

namespace tsaudit::data {
namespace {

constexpr char kHeader[] = "id,t,dim,value";

struct Cell {
  int t;
  int dim;
  double value;
  long long line;
};

bool ParseDouble(absl::string_view text, double& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

void AppendDouble(std::string& out, double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

}  // namespace

absl::StatusOr<std::vector<TimeSeries>> ParseCsv(std::istream& in) {
  std::string line;
  long long line_no = 0;
  if (!std::getline(in, line)) {
    return absl::InvalidArgumentError("CSV is empty; expected a header");
  }
  ++line_no;
  if (absl::StripSuffix(line, "\r") != kHeader) {
    return absl::InvalidArgumentError(absl::StrCat(
        "line 1: expected header '", kHeader, "', got '", line, "'"));
  }

  std::vector<std::string> order;
  std::map<std::string, std::vector<Cell>> cells;
  while (std::getline(in, line)) {
    ++line_no;
    const absl::string_view row = absl::StripSuffix(line, "\r");
    if (row.empty()) continue;
    const std::vector<absl::string_view> fields = absl::StrSplit(row, ',');
    const auto bad = [&](absl::string_view why) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_no, ": ", why, " in '", row, "'"));
    };
    if (fields.size() != 4) return bad("expected 4 fields");
    if (fields[0].empty()) return bad("empty id");
    Cell cell{0, 0, 0.0, line_no};
    if (!absl::SimpleAtoi(fields[1], &cell.t) || cell.t < 0) {
      return bad("bad time index");
    }
    if (!absl::SimpleAtoi(fields[2], &cell.dim) || cell.dim < 0) {
      return bad("bad dimension index");
    }
    if (!ParseDouble(fields[3], cell.value)) return bad("non-numeric value");
    auto [it, inserted] = cells.try_emplace(std::string(fields[0]));
    if (inserted) order.push_back(it->first);
    it->second.push_back(cell);
  }

  std::vector<TimeSeries> out;
  out.reserve(order.size());
  int shared_t = -1;
  int shared_d = -1;
  for (const std::string& id : order) {
    const std::vector<Cell>& rows = cells.at(id);
    int t_count = 0;
    int d_count = 0;
    for (const Cell& c : rows) {
      t_count = std::max(t_count, c.t + 1);
      d_count = std::max(d_count, c.dim + 1);
    }
    if (static_cast<long long>(t_count) * d_count !=
        static_cast<long long>(rows.size())) {
      return absl::FailedPreconditionError(absl::StrCat(
          "series '", id, "' has ", rows.size(), " rows but spans a ", t_count,
          "x", d_count, " grid"));
    }
    SeriesMatrix values(t_count, d_count);
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> seen =
        Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(
            t_count, d_count, false);
    for (const Cell& c : rows) {
      if (seen(c.t, c.dim)) {
        return absl::FailedPreconditionError(
            absl::StrCat("line ", c.line, ": duplicate entry for series '", id,
                         "' at t=", c.t, ", dim=", c.dim));
      }
      seen(c.t, c.dim) = true;
      values(c.t, c.dim) = c.value;
    }
    if (shared_t < 0) {
      shared_t = t_count;
      shared_d = d_count;
    } else if (t_count != shared_t || d_count != shared_d) {
      return absl::FailedPreconditionError(absl::StrCat(
          "series '", id, "' is ", t_count, "x", d_count,
          " but earlier series are ", shared_t, "x", shared_d));
    }
    TSAUDIT_ASSIGN_OR_RETURN(TimeSeries series,
                             TimeSeries::Create(id, std::move(values)));
    out.push_back(std::move(series));
  }
  return out;
}

absl::StatusOr<std::vector<TimeSeries>> LoadCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open '", path, "'"));
  auto parsed = ParseCsv(in);
  if (!parsed.ok()) {
    return absl::Status(parsed.status().code(),
                        absl::StrCat(path, ": ", parsed.status().message()));
  }
  return parsed;
}

std::string FormatCsv(std::span<const TimeSeries> data) {
  std::string out = absl::StrCat(kHeader, "\n");
  for (const TimeSeries& x : data) {
    for (int t = 0; t < x.length(); ++t) {
      for (int d = 0; d < x.dims(); ++d) {
        absl::StrAppend(&out, x.id(), ",", t, ",", d, ",");
        AppendDouble(out, x.at(t, d));
        out.push_back('\n');
      }
    }
  }
  return out;
}

absl::Status SaveCsv(std::span<const TimeSeries> data,
                     const std::string& path) {
  for (const TimeSeries& x : data) {
    if (x.id().find_first_of(",\n\r") != std::string::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("series id '", x.id(), "' cannot be written to CSV"));
    }
  }
  return WriteFileAtomic(path, FormatCsv(data));
}

}  // namespace tsaudit::data
