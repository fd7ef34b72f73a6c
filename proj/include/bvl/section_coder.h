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
#include "bvl/depthmap_codec.h"
#include "bvl/norm_context.h"
#include "bvl/voxel_cloud.h"

#include <cstdint>
#include <span>
#include <vector>

namespace bvl {

//============================================================================

struct Cell {
  int32_t z;
  int32_t x;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

//============================================================================
// Working images for one transverse section y = y0, each rows x cols
// (Nz x Nx), row major with z as the row:
//   T  true occupancy (encoder only)
//   P  reconstruction of section y0 - 1
//   R  current reconstruction
//   F  feasible region
//   K  known locations
//   M  cells ever placed on the list
// plus the FIFO list of cells still to visit.

struct SectionBuffers {
  int32_t rows = 0;
  int32_t cols = 0;

  std::vector<uint8_t> T, P, R, F, K, M;

  std::vector<Cell> list;
  size_t listHead = 0;

  // Cells with R = 1: depthmap seeds followed by coded ones, in the order
  // they were set.
  std::vector<Cell> occupied;

  SectionBuffers() = default;
  SectionBuffers(int32_t rows, int32_t cols);

  size_t at(int32_t z, int32_t x) const { return size_t(z) * cols + x; }
  bool inside(int32_t z, int32_t x) const
  {
    return z >= 0 && z < rows && x >= 0 && x < cols;
  }
};

// Prepares s for section y0 of the depthmaps, keeping s.P.  Seeds R at
// zmin and zmax of every occupied column, sets F over [zmin, zmax],
// K = !F | R, and fills the list with the 3x3 dilation of the seeds in
// row-major order (z outer, x inner), marking each listed cell in M.
// T is cleared.
void initSection(SectionBuffers& s, const DepthmapPair& maps, int32_t y0);

// Allocating form: P is copied from prev (rows * cols entries).
// Throws CodecError(kSizeMismatch) if prev or y0 do not fit the maps.
SectionBuffers buildSection(
  const DepthmapPair& maps, int32_t y0, std::span<const uint8_t> prev);

//----------------------------------------------------------------------------
// Runs the list to exhaustion.  For each unknown cell popped, the context
// is formed from the 3x3 crops of R + K and P (outside cells read 1 and 0
// respectively), the occupancy is coded, and if it is 1 every 8-neighbour
// with K = 0 and M = 0 is appended (neighbours visited row major).
// Returns the number of binary decisions coded.  If trace is given, each
// coded cell is appended to it.

uint64_t encodeSection(
  SectionBuffers& s,
  ContextModel& models,
  const NormTables& tables,
  ArithmeticEncoder& enc,
  std::vector<Cell>* trace = nullptr);

uint64_t decodeSection(
  SectionBuffers& s,
  ContextModel& models,
  const NormTables& tables,
  ArithmeticDecoder& dec,
  std::vector<Cell>* trace = nullptr);

//============================================================================
// Sweep over y0 = 0 .. Ny-1.  P of the first section is all zero; P of
// every later section is the final R of the one before it.

struct SweepResult {
  // Reconstructed points (x, y, z), sorted.
  std::vector<Point3> points;

  std::vector<uint64_t> decisionsPerSection;

  uint64_t decisions() const;
};

// Every cloud point must lie inside the feasible region of maps, which is
// the case when maps == project(cloud).
SweepResult encodeSweep(
  const VoxelCloud& cloud,
  const DepthmapPair& maps,
  ContextModel& models,
  const NormTables& tables,
  ArithmeticEncoder& enc);

SweepResult decodeSweep(
  const DepthmapPair& maps,
  ContextModel& models,
  const NormTables& tables,
  ArithmeticDecoder& dec);

//============================================================================

}  // namespace bvl
