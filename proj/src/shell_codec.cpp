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

#include "bvl/shell_codec.h"

#include "bvl/bit_io.h"
#include "bvl/depthmap_codec.h"
#include "bvl/error.h"
#include "bvl/section_coder.h"

#include <algorithm>
#include <iterator>

namespace bvl {

//============================================================================

std::vector<uint8_t>
encodeRawPoints(std::span<const Point3> points, const Dims3& dims)
{
  if (points.empty())
    return {};

  BitWriter out;
  out.write(points.size(), 32);
  for (const auto& p : points) {
    for (int k = 0; k < 3; k++)
      out.write(uint64_t(p[k]), bitsFor(dims[k]));
  }
  return out.finish();
}

std::vector<Point3>
decodeRawPoints(std::span<const uint8_t> bytes, const Dims3& dims)
{
  if (bytes.empty())
    return {};

  BitReader in(bytes);
  const uint64_t count = in.read(32);

  // each point needs at least one bit unless the volume is a single voxel
  int bitsPerPoint = 0;
  for (int k = 0; k < 3; k++)
    bitsPerPoint += bitsFor(dims[k]);
  if (bitsPerPoint > 0 && count > (uint64_t(bytes.size()) * 8) / bitsPerPoint)
    throw CodecError(ErrorCode::kTruncatedStream, "raw residual truncated");

  std::vector<Point3> points;
  points.reserve(count);
  for (uint64_t n = 0; n < count; n++) {
    Point3 p;
    for (int k = 0; k < 3; k++) {
      p[k] = int32_t(in.read(bitsFor(dims[k])));
      if (p[k] >= dims[k])
        throw CodecError(ErrorCode::kMalformedInput, "raw point outside volume");
    }
    points.push_back(p);
  }
  return points;
}

//============================================================================

ShellPlan
peel(const VoxelCloud& cloud, int maxShells, const NormTables& tables)
{
  if (cloud.empty())
    throw CodecError(ErrorCode::kEmptyCloud, "cannot encode an empty cloud");

  ShellPlan plan;
  ContextModel models;
  VoxelCloud remaining = cloud;

  for (int shell = 0; shell < maxShells && !remaining.empty(); shell++) {
    const DepthmapPair maps = project(remaining);

    ShellPayload payload;
    payload.depthmaps = encodeDepthmaps(maps);

    ArithmeticEncoder enc;
    SweepResult sweep = encodeSweep(remaining, maps, models, tables, enc);
    payload.sections = enc.flush();
    payload.pointCount = sweep.points.size();
    payload.decisionsPerSection = std::move(sweep.decisionsPerSection);

    std::vector<Point3> left;
    std::set_difference(
      remaining.points().begin(), remaining.points().end(),
      sweep.points.begin(), sweep.points.end(), std::back_inserter(left));
    remaining = VoxelCloud(cloud.dims(), std::move(left));

    plan.shells.push_back(std::move(payload));
  }

  plan.residual.assign(remaining.points().begin(), remaining.points().end());
  plan.residualBytes = encodeRawPoints(plan.residual, cloud.dims());
  return plan;
}

//----------------------------------------------------------------------------

UnpeelResult
unpeel(
  const Dims3& dims,
  std::span<const ShellStreams> shells,
  std::span<const uint8_t> residual,
  const NormTables& tables)
{
  UnpeelResult result;
  ContextModel models;
  std::vector<Point3> points;

  for (const auto& shell : shells) {
    const DepthmapPair maps =
      decodeDepthmaps(shell.depthmaps, dims[0], dims[1], dims[2]);

    ArithmeticDecoder dec(shell.sections);
    SweepResult sweep = decodeSweep(maps, models, tables, dec);
    points.insert(points.end(), sweep.points.begin(), sweep.points.end());
    result.decisionsPerSection.push_back(std::move(sweep.decisionsPerSection));
  }

  auto raw = decodeRawPoints(residual, dims);
  points.insert(points.end(), raw.begin(), raw.end());

  result.cloud = VoxelCloud(dims, std::move(points));
  return result;
}

//============================================================================

}  // namespace bvl
