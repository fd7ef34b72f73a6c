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

#include "bvl/arithmetic_coder.h"
#include "bvl/voxel_cloud.h"

#include <cstdint>
#include <span>
#include <vector>

namespace bvl {

//============================================================================
// Minimal and maximal depthmaps of a cloud projected along z onto the xy
// plane, with an explicit occupancy mask.  zmin/zmax are meaningful only
// where occupied(x, y); elsewhere they hold zero and are never coded.

struct DepthmapPair {
  int32_t width = 0;   // Nx
  int32_t height = 0;  // Ny
  int32_t depth = 0;   // Nz

  std::vector<uint8_t> occ;
  std::vector<int32_t> zmin;
  std::vector<int32_t> zmax;

  DepthmapPair() = default;
  DepthmapPair(int32_t width, int32_t height, int32_t depth);

  size_t index(int32_t x, int32_t y) const { return size_t(y) * width + x; }

  bool occupied(int32_t x, int32_t y) const { return occ[index(x, y)] != 0; }
  int32_t minAt(int32_t x, int32_t y) const { return zmin[index(x, y)]; }
  int32_t maxAt(int32_t x, int32_t y) const { return zmax[index(x, y)]; }

  size_t occupiedCount() const;

  friend bool operator==(const DepthmapPair&, const DepthmapPair&) = default;
};

// Throws CodecError(kEmptyCloud) for an empty cloud.
DepthmapPair project(const VoxelCloud& cloud);

//============================================================================
// Lossless depthmap coder.
//
// One raster pass (y outer, x inner).  Per pixel:
//  - the occupancy bit, under a 10-pixel causal template (four pixels to
//    the west on the current row, six on the row above from x-3 to x+2);
//  - if occupied, zmin minus a predictor: the median of the west, north
//    and north-west zmin when all three pixels are occupied, otherwise the
//    first occupied of west, north, north-west, otherwise depth / 2;
//  - then the thickness zmax - zmin minus the west thickness (0 if the
//    west pixel is empty).
// Residuals are sign interleaved and Exp-Golomb binarized, each bin under
// an adaptive context selected by bin position.

CodedStream encodeDepthmaps(const DepthmapPair& maps);

// Throws CodecError(kTruncatedStream) on a short payload and
// CodecError(kMalformedInput) if a decoded depth leaves [0, depth).
DepthmapPair decodeDepthmaps(
  std::span<const uint8_t> bytes, int32_t width, int32_t height, int32_t depth);

//============================================================================

}  // namespace bvl
