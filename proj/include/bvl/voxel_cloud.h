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

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace bvl {

//============================================================================

// Integer voxel coordinate, indexed by axis (0 = x, 1 = y, 2 = z).
using Point3 = std::array<int32_t, 3>;

// Voxels per axis.
using Dims3 = std::array<int32_t, 3>;

//============================================================================
// A voxelized point cloud: a set of occupied integer positions inside a
// box of dims[0] x dims[1] x dims[2] voxels.
//
// Points are kept sorted in lexicographic (x, y, z) order with duplicates
// removed, so two clouds holding the same voxel set compare equal.

class VoxelCloud {
public:
  VoxelCloud() = default;

  // Throws CodecError(kOutOfRange) if a point lies outside dims or a dim
  // is not positive.  Duplicates collapse.
  VoxelCloud(Dims3 dims, std::vector<Point3> points);

  // Dims are derived as (max coordinate + 1) per axis; an empty point list
  // gives dims (1, 1, 1).
  static VoxelCloud fromPoints(std::vector<Point3> points);

  const Dims3& dims() const { return _dims; }
  std::span<const Point3> points() const { return _points; }
  size_t size() const { return _points.size(); }
  bool empty() const { return _points.empty(); }

  bool contains(const Point3& p) const;

  friend bool operator==(const VoxelCloud&, const VoxelCloud&) = default;

private:
  Dims3 _dims{1, 1, 1};
  std::vector<Point3> _points;
};

//============================================================================
// One of the six orderings of the axis labels.  Output axis k takes the
// input axis axes()[k]; ids enumerate the orderings lexicographically:
//   0 xyz, 1 xzy, 2 yxz, 3 yzx, 4 zxy, 5 zyx.

class AxisPermutation {
public:
  static constexpr int kCount = 6;

  AxisPermutation() = default;
  explicit AxisPermutation(int id);

  static AxisPermutation identity() { return AxisPermutation(0); }

  int id() const { return _id; }
  const std::array<int, 3>& axes() const;
  AxisPermutation inverse() const;

  Point3 apply(const Point3& p) const;

  // e.g. "zxy"
  std::string_view name() const;

  friend bool operator==(AxisPermutation a, AxisPermutation b)
  {
    return a._id == b._id;
  }

private:
  int _id = 0;
};

VoxelCloud permuteAxes(const VoxelCloud& cloud, AxisPermutation perm);

//============================================================================

// ceil(log2(n)) for n >= 1; the number of bits needed to address n values.
int bitsFor(int64_t n);

// Bit depth of a cloud: bitsFor(max dim).
int sourceBitDepth(const VoxelCloud& cloud);

struct QuantizeResult {
  VoxelCloud cloud;

  // False when the requested depth is not below the source depth and the
  // input was returned unchanged.
  bool applied = false;

  int sourceBits = 0;
};

// Right-shifts every coordinate by (sourceBitDepth - targetBits) and sets
// dims to 2^targetBits per axis.  targetBits must be >= 1.
QuantizeResult quantize(const VoxelCloud& cloud, int targetBits);

//============================================================================

}  // namespace bvl
