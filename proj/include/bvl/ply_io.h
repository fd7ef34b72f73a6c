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

#include "bvl/voxel_cloud.h"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace bvl {

enum class PlyFormat
{
  kAscii,
  kBinaryLittleEndian,
};

// Reads the x, y, z properties of the vertex element.  Other elements and
// properties are skipped.  Float positions must be integral valued.  When
// dims is not given it defaults to (max coordinate + 1) per axis.
VoxelCloud parsePly(
  std::span<const uint8_t> bytes, std::optional<Dims3> dims = std::nullopt);

// Emits a vertex-only PLY with int32 x, y, z properties.
std::vector<uint8_t> writePly(const VoxelCloud& cloud, PlyFormat format);

VoxelCloud readPlyFile(
  const std::filesystem::path& path, std::optional<Dims3> dims = std::nullopt);

void writePlyFile(
  const std::filesystem::path& path,
  const VoxelCloud& cloud,
  PlyFormat format = PlyFormat::kBinaryLittleEndian);

std::vector<uint8_t> readFileBytes(const std::filesystem::path& path);
void writeFileBytes(
  const std::filesystem::path& path, std::span<const uint8_t> bytes);

}  // namespace bvl
