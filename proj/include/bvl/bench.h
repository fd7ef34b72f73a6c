// Copyright 2026 The BVL Authors
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

#include "bvl/container.h"

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace bvl {

struct BenchRow {
  std::string file;
  RateReport report;
  bool lossless = false;
};

struct BenchFailure {
  std::string file;
  std::string message;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::vector<BenchFailure> skipped;

  double averageBpv() const;
};

// Encodes and decodes every .ply file in dir (sorted by name), checking the
// round trip.  Files that fail to read or encode are skipped and reported.
BenchResult runBench(
  const std::filesystem::path& dir,
  const EncodeOptions& options = {},
  const NormTables& tables = defaultNormTables());

// Columns: file, points, permutation, shells, stage1_bits, stage2_bits,
// residual_bits, total_bits, bpv, encode_ms, decode_ms.
void writeBenchCsv(std::ostream& out, const BenchResult& result);
void writeBenchText(std::ostream& out, const BenchResult& result);

void writeReportCsv(std::ostream& out, const std::string& file, const RateReport& r);
void writeReportText(std::ostream& out, const std::string& file, const RateReport& r);

}  // namespace bvl
