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

#include "bvl/norm_context.h"
#include "bvl/voxel_cloud.h"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace bvl {

//============================================================================
// Container layout, little endian:
//
//   "BVL1"                   4 bytes
//   version                  u16
//   permutation id           u8
//   shell count S            u8
//   Nx, Ny, Nz               u32 each (dims of the permuted cloud)
//   payload lengths          u32 x (2S + 1): for each shell the depthmap
//                            then the Stage II payload, then the residual
//   payloads                 concatenated in the same order

constexpr std::array<uint8_t, 4> kContainerMagic = {'B', 'V', 'L', '1'};

// Version 1: rows index z and columns index x in the 3x3 patches, quarter
// turns are counterclockwise in (z, x), ties in W go to the smallest turn,
// and Stage II models persist across sections and shells.
constexpr uint16_t kFormatVersion = 1;

struct ContainerHeader {
  uint16_t version = kFormatVersion;
  AxisPermutation permutation;
  Dims3 dims{1, 1, 1};
  int shellCount = 0;
  std::vector<uint32_t> payloadLengths;

  size_t byteSize() const { return 4 + 2 + 1 + 1 + 12 + 4 * payloadLengths.size(); }
};

std::vector<uint8_t> writeHeader(const ContainerHeader& header);

// Throws CodecError: kBadMagic, kVersionMismatch, kTruncatedStream, or
// kMalformedInput for an inconsistent payload table.
ContainerHeader readHeader(std::span<const uint8_t> bytes);

//============================================================================

struct EncodeOptions {
  // nullopt searches all six and keeps the smallest bitstream.
  std::optional<int> permutation;
  int maxShells = 2;
  std::optional<int> targetBits;
};

struct RateReport {
  uint64_t pointCount = 0;
  int permutation = 0;
  int shells = 0;

  uint64_t stage1Bits = 0;
  std::vector<uint64_t> stage2BitsPerShell;
  uint64_t residualBits = 0;

  // Payload bits (header excluded); equals stage1 + stage2 + residual.
  uint64_t totalBits = 0;
  uint64_t headerBits = 0;

  // Payload bits of each fixed-permutation encode that was run.
  std::array<std::optional<uint64_t>, AxisPermutation::kCount> perPermutationBits;

  bool quantized = false;
  double encodeMs = 0;
  double decodeMs = 0;

  uint64_t stage2Bits() const;
  double bpv() const
  {
    return pointCount ? double(totalBits) / double(pointCount) : 0.0;
  }
};

struct EncodeResult {
  std::vector<uint8_t> container;
  RateReport report;
};

// Throws CodecError(kEmptyCloud) for an empty cloud.
EncodeResult encodeCloud(
  const VoxelCloud& cloud,
  const EncodeOptions& options = {},
  const NormTables& tables = defaultNormTables());

EncodeResult encodeFile(
  const std::filesystem::path& input,
  const EncodeOptions& options = {},
  const NormTables& tables = defaultNormTables());

// Returns the cloud in its original axis order.
VoxelCloud decodeContainer(
  std::span<const uint8_t> bytes,
  const NormTables& tables = defaultNormTables());

//============================================================================

}  // namespace bvl
