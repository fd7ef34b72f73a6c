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

#include "bvl/bench.h"

#include "bvl/ply_io.h"

#include <algorithm>
#include <chrono>
#include <exception>
#include <iomanip>

namespace bvl {

//============================================================================

double
BenchResult::averageBpv() const
{
  if (rows.empty())
    return 0.0;
  double sum = 0;
  for (const auto& row : rows)
    sum += row.report.bpv();
  return sum / double(rows.size());
}

BenchResult
runBench(
  const std::filesystem::path& dir,
  const EncodeOptions& options,
  const NormTables& tables)
{
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".ply")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  BenchResult result;
  for (const auto& path : files) {
    try {
      const VoxelCloud cloud = readPlyFile(path);
      EncodeResult encoded = encodeCloud(cloud, options, tables);

      const auto start = std::chrono::steady_clock::now();
      const VoxelCloud decoded = decodeContainer(encoded.container, tables);
      encoded.report.decodeMs = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();

      BenchRow row;
      row.file = path.filename().string();
      row.report = encoded.report;
      row.lossless = options.targetBits
        ? decoded == quantize(cloud, *options.targetBits).cloud
        : decoded == cloud;
      result.rows.push_back(std::move(row));
    } catch (const std::exception& e) {
      result.skipped.push_back({path.filename().string(), e.what()});
    }
  }
  return result;
}

//----------------------------------------------------------------------------

void
writeReportCsv(std::ostream& out, const std::string& file, const RateReport& r)
{
  out << file << ',' << r.pointCount << ',' << r.permutation << ',' << r.shells
      << ',' << r.stage1Bits << ',' << r.stage2Bits() << ',' << r.residualBits
      << ',' << r.totalBits << ',' << std::fixed << std::setprecision(6)
      << r.bpv() << ',' << std::setprecision(3) << r.encodeMs << ','
      << r.decodeMs << '\n';
  out.unsetf(std::ios::floatfield);
}

void
writeBenchCsv(std::ostream& out, const BenchResult& result)
{
  out << "file,points,permutation,shells,stage1_bits,stage2_bits,"
         "residual_bits,total_bits,bpv,encode_ms,decode_ms\n";
  for (const auto& row : result.rows)
    writeReportCsv(out, row.file, row.report);
}

//----------------------------------------------------------------------------

void
writeReportText(std::ostream& out, const std::string& file, const RateReport& r)
{
  out << file << '\n'
      << "  points       " << r.pointCount << '\n'
      << "  permutation  " << AxisPermutation(r.permutation).name() << " ("
      << r.permutation << ")\n"
      << "  shells       " << r.shells << '\n'
      << "  stage I      " << r.stage1Bits << " bits\n";
  for (size_t s = 0; s < r.stage2BitsPerShell.size(); s++)
    out << "  stage II #" << s + 1 << "  " << r.stage2BitsPerShell[s] << " bits\n";
  out << "  residual     " << r.residualBits << " bits\n"
      << "  total        " << r.totalBits << " bits (+" << r.headerBits
      << " header)\n"
      << "  rate         " << std::fixed << std::setprecision(4) << r.bpv()
      << " bpv\n";

  bool any = false;
  for (int id = 0; id < AxisPermutation::kCount; id++)
    any |= r.perPermutationBits[id].has_value();
  if (any) {
    out << "  per permutation:";
    for (int id = 0; id < AxisPermutation::kCount; id++) {
      if (r.perPermutationBits[id])
        out << ' ' << AxisPermutation(id).name() << '=' << *r.perPermutationBits[id];
    }
    out << '\n';
  }
  out << "  encode       " << std::setprecision(1) << r.encodeMs << " ms\n";
  if (r.decodeMs > 0)
    out << "  decode       " << r.decodeMs << " ms\n";
  out.unsetf(std::ios::floatfield);
}

void
writeBenchText(std::ostream& out, const BenchResult& result)
{
  out << std::left << std::setw(32) << "file" << std::right << std::setw(10)
      << "points" << std::setw(6) << "perm" << std::setw(7) << "shells"
      << std::setw(12) << "stage1" << std::setw(12) << "stage2"
      << std::setw(10) << "residual" << std::setw(9) << "bpv"
      << std::setw(10) << "enc ms" << std::setw(10) << "dec ms" << "  ok\n";

  for (const auto& row : result.rows) {
    const auto& r = row.report;
    out << std::left << std::setw(32) << row.file << std::right << std::setw(10)
        << r.pointCount << std::setw(6) << AxisPermutation(r.permutation).name()
        << std::setw(7) << r.shells << std::setw(12) << r.stage1Bits
        << std::setw(12) << r.stage2Bits() << std::setw(10) << r.residualBits
        << std::setw(9) << std::fixed << std::setprecision(4) << r.bpv()
        << std::setw(10) << std::setprecision(1) << r.encodeMs << std::setw(10)
        << r.decodeMs << "  " << (row.lossless ? "yes" : "NO") << '\n';
    out.unsetf(std::ios::floatfield);
  }

  out << "average bpv: " << std::fixed << std::setprecision(4)
      << result.averageBpv() << " over " << result.rows.size() << " file(s)\n";
  out.unsetf(std::ios::floatfield);
  for (const auto& skip : result.skipped)
    out << "skipped " << skip.file << ": " << skip.message << '\n';
}

//============================================================================

}  // namespace bvl
