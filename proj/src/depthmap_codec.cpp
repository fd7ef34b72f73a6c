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

#include "bvl/depthmap_codec.h"

#include "bvl/error.h"

#include <algorithm>
#include <array>
#include <memory>

namespace bvl {

//============================================================================

DepthmapPair::DepthmapPair(int32_t width, int32_t height, int32_t depth)
  : width(width)
  , height(height)
  , depth(depth)
  , occ(size_t(width) * height, 0)
  , zmin(size_t(width) * height, 0)
  , zmax(size_t(width) * height, 0)
{}

size_t
DepthmapPair::occupiedCount() const
{
  return size_t(std::count(occ.begin(), occ.end(), uint8_t(1)));
}

//----------------------------------------------------------------------------

DepthmapPair
project(const VoxelCloud& cloud)
{
  if (cloud.empty())
    throw CodecError(ErrorCode::kEmptyCloud, "cannot project an empty cloud");

  const auto& dims = cloud.dims();
  DepthmapPair maps(dims[0], dims[1], dims[2]);

  for (const auto& p : cloud.points()) {
    const size_t i = maps.index(p[0], p[1]);
    if (!maps.occ[i]) {
      maps.occ[i] = 1;
      maps.zmin[i] = p[2];
      maps.zmax[i] = p[2];
    } else {
      maps.zmin[i] = std::min(maps.zmin[i], p[2]);
      maps.zmax[i] = std::max(maps.zmax[i], p[2]);
    }
  }
  return maps;
}

//============================================================================

namespace {

  struct DepthmapContexts {
    std::array<BinaryModel, 1024> occupancy;
    ExpGolombContexts zminResidual;
    ExpGolombContexts thicknessResidual;
  };

  int
  occupancyContext(const DepthmapPair& maps, int32_t x, int32_t y)
  {
    auto at = [&](int32_t xx, int32_t yy) -> int {
      if (xx < 0 || yy < 0 || xx >= maps.width || yy >= maps.height)
        return 0;
      return maps.occ[maps.index(xx, yy)];
    };

    int ctx = 0;
    for (int dx = 1; dx <= 4; dx++)
      ctx = (ctx << 1) | at(x - dx, y);
    for (int dx = -3; dx <= 2; dx++)
      ctx = (ctx << 1) | at(x + dx, y - 1);
    return ctx;
  }

  int32_t
  predictZmin(const DepthmapPair& maps, int32_t x, int32_t y)
  {
    const bool hasW = x > 0 && maps.occupied(x - 1, y);
    const bool hasN = y > 0 && maps.occupied(x, y - 1);
    const bool hasNW = x > 0 && y > 0 && maps.occupied(x - 1, y - 1);

    if (hasW && hasN && hasNW) {
      int32_t a = maps.minAt(x - 1, y);
      int32_t b = maps.minAt(x, y - 1);
      int32_t c = maps.minAt(x - 1, y - 1);
      return std::max(std::min(a, b), std::min(std::max(a, b), c));
    }
    if (hasW)
      return maps.minAt(x - 1, y);
    if (hasN)
      return maps.minAt(x, y - 1);
    if (hasNW)
      return maps.minAt(x - 1, y - 1);
    return maps.depth / 2;
  }

  int32_t
  predictThickness(const DepthmapPair& maps, int32_t x, int32_t y)
  {
    if (x > 0 && maps.occupied(x - 1, y))
      return maps.maxAt(x - 1, y) - maps.minAt(x - 1, y);
    return 0;
  }

}  // namespace

//----------------------------------------------------------------------------

CodedStream
encodeDepthmaps(const DepthmapPair& maps)
{
  auto ctx = std::make_unique<DepthmapContexts>();
  ArithmeticEncoder enc;

  for (int32_t y = 0; y < maps.height; y++) {
    for (int32_t x = 0; x < maps.width; x++) {
      const size_t i = maps.index(x, y);
      enc.encode(maps.occ[i], ctx->occupancy[occupancyContext(maps, x, y)]);
      if (!maps.occ[i])
        continue;

      const int32_t zmin = maps.zmin[i];
      encodeExpGolomb(
        enc, ctx->zminResidual, interleaveSign(zmin - predictZmin(maps, x, y)));

      const int32_t thickness = maps.zmax[i] - zmin;
      encodeExpGolomb(
        enc, ctx->thicknessResidual,
        interleaveSign(thickness - predictThickness(maps, x, y)));
    }
  }

  return enc.flush();
}

//----------------------------------------------------------------------------

DepthmapPair
decodeDepthmaps(
  std::span<const uint8_t> bytes, int32_t width, int32_t height, int32_t depth)
{
  auto ctx = std::make_unique<DepthmapContexts>();
  ArithmeticDecoder dec(bytes);
  DepthmapPair maps(width, height, depth);

  for (int32_t y = 0; y < height; y++) {
    for (int32_t x = 0; x < width; x++) {
      const size_t i = maps.index(x, y);
      maps.occ[i] =
        uint8_t(dec.decode(ctx->occupancy[occupancyContext(maps, x, y)]));
      if (!maps.occ[i])
        continue;

      const int64_t zmin = int64_t(predictZmin(maps, x, y))
        + deinterleaveSign(decodeExpGolomb(dec, ctx->zminResidual));
      const int64_t thickness = int64_t(predictThickness(maps, x, y))
        + deinterleaveSign(decodeExpGolomb(dec, ctx->thicknessResidual));

      if (zmin < 0 || thickness < 0 || zmin + thickness >= depth)
        throw CodecError(ErrorCode::kMalformedInput, "depth out of range");

      maps.zmin[i] = int32_t(zmin);
      maps.zmax[i] = int32_t(zmin + thickness);
    }
  }

  return maps;
}

//============================================================================

}  // namespace bvl
