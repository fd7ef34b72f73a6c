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

#include "bvl/voxel_cloud.h"

#include "bvl/error.h"

#include <algorithm>
#include <string>

namespace bvl {

//============================================================================

const char*
errorCodeName(ErrorCode code)
{
  switch (code) {
  case ErrorCode::kMalformedInput: return "malformed input";
  case ErrorCode::kOutOfRange: return "out of range";
  case ErrorCode::kEmptyCloud: return "empty cloud";
  case ErrorCode::kTruncatedStream: return "truncated stream";
  case ErrorCode::kBadMagic: return "bad magic";
  case ErrorCode::kVersionMismatch: return "version mismatch";
  case ErrorCode::kSizeMismatch: return "size mismatch";
  case ErrorCode::kIo: return "i/o error";
  }
  return "unknown error";
}

//============================================================================

VoxelCloud::VoxelCloud(Dims3 dims, std::vector<Point3> points)
  : _dims(dims), _points(std::move(points))
{
  for (int k = 0; k < 3; k++) {
    if (_dims[k] <= 0)
      throw CodecError(ErrorCode::kOutOfRange, "non-positive dimension");
  }

  for (const auto& p : _points) {
    for (int k = 0; k < 3; k++) {
      if (p[k] < 0 || p[k] >= _dims[k])
        throw CodecError(
          ErrorCode::kOutOfRange,
          "point (" + std::to_string(p[0]) + "," + std::to_string(p[1]) + ","
            + std::to_string(p[2]) + ") outside volume");
    }
  }

  std::sort(_points.begin(), _points.end());
  _points.erase(std::unique(_points.begin(), _points.end()), _points.end());
}

//----------------------------------------------------------------------------

VoxelCloud
VoxelCloud::fromPoints(std::vector<Point3> points)
{
  Dims3 dims{1, 1, 1};
  for (const auto& p : points) {
    for (int k = 0; k < 3; k++) {
      if (p[k] < 0)
        throw CodecError(ErrorCode::kOutOfRange, "negative coordinate");
      dims[k] = std::max(dims[k], p[k] + 1);
    }
  }
  return VoxelCloud(dims, std::move(points));
}

//----------------------------------------------------------------------------

bool
VoxelCloud::contains(const Point3& p) const
{
  return std::binary_search(_points.begin(), _points.end(), p);
}

//============================================================================

namespace {

  constexpr std::array<std::array<int, 3>, 6> kAxisOrders = {{
    {0, 1, 2},
    {0, 2, 1},
    {1, 0, 2},
    {1, 2, 0},
    {2, 0, 1},
    {2, 1, 0},
  }};

  constexpr std::array<std::string_view, 6> kAxisNames = {
    "xyz", "xzy", "yxz", "yzx", "zxy", "zyx"};

}  // namespace

AxisPermutation::AxisPermutation(int id) : _id(id)
{
  if (id < 0 || id >= kCount)
    throw CodecError(ErrorCode::kOutOfRange, "permutation id not in 0..5");
}

const std::array<int, 3>&
AxisPermutation::axes() const
{
  return kAxisOrders[_id];
}

AxisPermutation
AxisPermutation::inverse() const
{
  const auto& fwd = axes();
  std::array<int, 3> inv{};
  for (int k = 0; k < 3; k++)
    inv[fwd[k]] = k;

  for (int id = 0; id < kCount; id++) {
    if (kAxisOrders[id] == inv)
      return AxisPermutation(id);
  }
  return AxisPermutation(0);
}

Point3
AxisPermutation::apply(const Point3& p) const
{
  const auto& a = axes();
  return {p[a[0]], p[a[1]], p[a[2]]};
}

std::string_view
AxisPermutation::name() const
{
  return kAxisNames[_id];
}

//----------------------------------------------------------------------------

VoxelCloud
permuteAxes(const VoxelCloud& cloud, AxisPermutation perm)
{
  std::vector<Point3> points;
  points.reserve(cloud.size());
  for (const auto& p : cloud.points())
    points.push_back(perm.apply(p));

  return VoxelCloud(perm.apply(cloud.dims()), std::move(points));
}

//============================================================================

int
bitsFor(int64_t n)
{
  int bits = 0;
  while ((int64_t(1) << bits) < n)
    bits++;
  return bits;
}

int
sourceBitDepth(const VoxelCloud& cloud)
{
  const auto& d = cloud.dims();
  return bitsFor(std::max({d[0], d[1], d[2]}));
}

//----------------------------------------------------------------------------

QuantizeResult
quantize(const VoxelCloud& cloud, int targetBits)
{
  if (targetBits < 1)
    throw CodecError(ErrorCode::kOutOfRange, "target bit depth must be >= 1");

  QuantizeResult result;
  result.sourceBits = sourceBitDepth(cloud);

  if (targetBits > result.sourceBits) {
    result.cloud = cloud;
    result.applied = false;
    return result;
  }

  const int shift = result.sourceBits - targetBits;
  std::vector<Point3> points;
  points.reserve(cloud.size());
  for (const auto& p : cloud.points())
    points.push_back({p[0] >> shift, p[1] >> shift, p[2] >> shift});

  const int32_t side = int32_t(1) << targetBits;
  result.cloud = VoxelCloud({side, side, side}, std::move(points));
  result.applied = true;
  return result;
}

//============================================================================

}  // namespace bvl
