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
#include "bvl/norm_context.h"
#include "bvl/voxel_cloud.h"

#include <cstdint>
#include <span>
#include <vector>

namespace bvl {

//============================================================================
// Peeling: shell 1 is the depthmap projection plus sweep of the whole
// cloud; each further shell (up to maxShells) repeats this on the points
// not yet reconstructed.  Whatever is left is written raw.

struct ShellPayload {
  CodedStream depthmaps;
  CodedStream sections;

  size_t pointCount = 0;
  std::vector<uint64_t> decisionsPerSection;
};

struct ShellPlan {
  std::vector<ShellPayload> shells;

  // Points left after the last shell, sorted.
  std::vector<Point3> residual;

  // Raw residual payload: empty when there is no residual, otherwise a
  // 32-bit count followed by bitsFor(dims[k]) bits per coordinate, MSB
  // first and zero padded to a byte.
  std::vector<uint8_t> residualBytes;
};

// Context models for Stage II persist across all sections and shells.
// Throws CodecError(kEmptyCloud) on an empty cloud.
ShellPlan peel(
  const VoxelCloud& cloud,
  int maxShells = 2,
  const NormTables& tables = defaultNormTables());

struct ShellStreams {
  std::span<const uint8_t> depthmaps;
  std::span<const uint8_t> sections;
};

struct UnpeelResult {
  VoxelCloud cloud;
  std::vector<std::vector<uint64_t>> decisionsPerSection;  // per shell
};

UnpeelResult unpeel(
  const Dims3& dims,
  std::span<const ShellStreams> shells,
  std::span<const uint8_t> residual,
  const NormTables& tables = defaultNormTables());

std::vector<uint8_t> encodeRawPoints(
  std::span<const Point3> points, const Dims3& dims);

std::vector<Point3> decodeRawPoints(
  std::span<const uint8_t> bytes, const Dims3& dims);

//============================================================================

}  // namespace bvl
