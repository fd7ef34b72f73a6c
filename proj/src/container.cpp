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

#include "bvl/container.h"

#include "bvl/bit_io.h"
#include "bvl/error.h"
#include "bvl/ply_io.h"
#include "bvl/shell_codec.h"

#include <algorithm>
#include <chrono>
#include <future>
#include <limits>
#include <string>
#include <numeric>

namespace bvl {

//============================================================================

std::vector<uint8_t>
writeHeader(const ContainerHeader& header)
{
  ByteWriter out;
  out.raw(kContainerMagic);
  out.u16(header.version);
  out.u8(uint8_t(header.permutation.id()));
  out.u8(uint8_t(header.shellCount));
  for (int k = 0; k < 3; k++)
    out.u32(uint32_t(header.dims[k]));
  for (uint32_t len : header.payloadLengths)
    out.u32(len);
  return std::move(out.bytes());
}

ContainerHeader
readHeader(std::span<const uint8_t> bytes)
{
  ByteReader in(bytes);
  if (in.remaining() < 4 || !std::equal(kContainerMagic.begin(), kContainerMagic.end(), bytes.begin()))
    throw CodecError(ErrorCode::kBadMagic, "not a BVL container");
  in.raw(4);

  ContainerHeader header;
  header.version = in.u16();
  if (header.version != kFormatVersion)
    throw CodecError(
      ErrorCode::kVersionMismatch,
      "unsupported container version " + std::to_string(header.version));

  const int perm = in.u8();
  if (perm >= AxisPermutation::kCount)
    throw CodecError(ErrorCode::kMalformedInput, "bad permutation id");
  header.permutation = AxisPermutation(perm);
  header.shellCount = in.u8();

  for (int k = 0; k < 3; k++) {
    const uint32_t d = in.u32();
    if (d == 0 || d > uint32_t(std::numeric_limits<int32_t>::max()))
      throw CodecError(ErrorCode::kMalformedInput, "bad dimension");
    header.dims[k] = int32_t(d);
  }

  const int payloads = 2 * header.shellCount + 1;
  uint64_t total = 0;
  for (int i = 0; i < payloads; i++) {
    header.payloadLengths.push_back(in.u32());
    total += header.payloadLengths.back();
  }
  if (total > in.remaining())
    throw CodecError(ErrorCode::kTruncatedStream, "container payload truncated");

  return header;
}

//============================================================================

uint64_t
RateReport::stage2Bits() const
{
  return std::accumulate(
    stage2BitsPerShell.begin(), stage2BitsPerShell.end(), uint64_t(0));
}

namespace {

  using Clock = std::chrono::steady_clock;

  double
  millisSince(Clock::time_point start)
  {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }

  EncodeResult
  encodeWithPermutation(
    const VoxelCloud& cloud,
    AxisPermutation perm,
    int maxShells,
    const NormTables& tables)
  {
    const VoxelCloud permuted = permuteAxes(cloud, perm);
    const ShellPlan plan = peel(permuted, maxShells, tables);

    ContainerHeader header;
    header.permutation = perm;
    header.dims = permuted.dims();
    header.shellCount = int(plan.shells.size());

    RateReport report;
    report.pointCount = cloud.size();
    report.permutation = perm.id();
    report.shells = header.shellCount;

    for (const auto& shell : plan.shells) {
      header.payloadLengths.push_back(uint32_t(shell.depthmaps.bytes.size()));
      header.payloadLengths.push_back(uint32_t(shell.sections.bytes.size()));
      report.stage1Bits += shell.depthmaps.bitLength();
      report.stage2BitsPerShell.push_back(shell.sections.bitLength());
    }
    header.payloadLengths.push_back(uint32_t(plan.residualBytes.size()));
    report.residualBits = uint64_t(plan.residualBytes.size()) * 8;
    report.totalBits = report.stage1Bits + report.stage2Bits() + report.residualBits;

    EncodeResult result;
    result.container = writeHeader(header);
    report.headerBits = uint64_t(result.container.size()) * 8;
    for (const auto& shell : plan.shells) {
      result.container.insert(
        result.container.end(), shell.depthmaps.bytes.begin(),
        shell.depthmaps.bytes.end());
      result.container.insert(
        result.container.end(), shell.sections.bytes.begin(),
        shell.sections.bytes.end());
    }
    result.container.insert(
      result.container.end(), plan.residualBytes.begin(), plan.residualBytes.end());

    report.perPermutationBits[perm.id()] = report.totalBits;
    result.report = std::move(report);
    return result;
  }

}  // namespace

//----------------------------------------------------------------------------

EncodeResult
encodeCloud(
  const VoxelCloud& input, const EncodeOptions& options, const NormTables& tables)
{
  if (input.empty())
    throw CodecError(ErrorCode::kEmptyCloud, "cannot encode an empty cloud");
  if (options.maxShells < 0 || options.maxShells > 255)
    throw CodecError(ErrorCode::kOutOfRange, "max shells must be in 0..255");

  const auto start = Clock::now();

  VoxelCloud cloud = input;
  bool quantized = false;
  if (options.targetBits) {
    auto q = quantize(input, *options.targetBits);
    cloud = std::move(q.cloud);
    quantized = q.applied;
  }

  EncodeResult best;
  if (options.permutation) {
    best = encodeWithPermutation(
      cloud, AxisPermutation(*options.permutation), options.maxShells, tables);
  } else {
    std::vector<std::future<EncodeResult>> jobs;
    for (int id = 0; id < AxisPermutation::kCount; id++) {
      jobs.push_back(std::async(std::launch::async, [&, id] {
        return encodeWithPermutation(
          cloud, AxisPermutation(id), options.maxShells, tables);
      }));
    }

    std::array<std::optional<uint64_t>, AxisPermutation::kCount> totals;
    bool first = true;
    for (auto& job : jobs) {
      EncodeResult r = job.get();
      totals[r.report.permutation] = r.report.totalBits;
      // ties keep the lower id
      if (first || r.report.totalBits < best.report.totalBits)
        best = std::move(r);
      first = false;
    }
    best.report.perPermutationBits = totals;
  }

  best.report.quantized = quantized;
  best.report.encodeMs = millisSince(start);
  return best;
}

EncodeResult
encodeFile(
  const std::filesystem::path& input,
  const EncodeOptions& options,
  const NormTables& tables)
{
  return encodeCloud(readPlyFile(input), options, tables);
}

//----------------------------------------------------------------------------

VoxelCloud
decodeContainer(std::span<const uint8_t> bytes, const NormTables& tables)
{
  const ContainerHeader header = readHeader(bytes);
  size_t offset = header.byteSize();

  auto take = [&](uint32_t len) {
    auto out = bytes.subspan(offset, len);
    offset += len;
    return out;
  };

  std::vector<ShellStreams> shells;
  for (int s = 0; s < header.shellCount; s++) {
    ShellStreams streams;
    streams.depthmaps = take(header.payloadLengths[2 * s]);
    streams.sections = take(header.payloadLengths[2 * s + 1]);
    shells.push_back(streams);
  }
  auto residual = take(header.payloadLengths.back());

  const auto decoded = unpeel(header.dims, shells, residual, tables);
  return permuteAxes(decoded.cloud, header.permutation.inverse());
}

//============================================================================

}  // namespace bvl
