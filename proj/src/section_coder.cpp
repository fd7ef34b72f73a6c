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

#include "bvl/section_coder.h"

#include "bvl/error.h"

#include <algorithm>
#include <numeric>

namespace bvl {

//============================================================================

SectionBuffers::SectionBuffers(int32_t rows, int32_t cols)
  : rows(rows)
  , cols(cols)
  , T(size_t(rows) * cols, 0)
  , P(size_t(rows) * cols, 0)
  , R(size_t(rows) * cols, 0)
  , F(size_t(rows) * cols, 0)
  , K(size_t(rows) * cols, 1)
  , M(size_t(rows) * cols, 0)
{}

//----------------------------------------------------------------------------

void
initSection(SectionBuffers& s, const DepthmapPair& maps, int32_t y0)
{
  if (maps.depth != s.rows || maps.width != s.cols)
    throw CodecError(ErrorCode::kSizeMismatch, "section size does not match depthmaps");
  if (y0 < 0 || y0 >= maps.height)
    throw CodecError(ErrorCode::kSizeMismatch, "section index outside depthmaps");

  std::fill(s.T.begin(), s.T.end(), 0);
  std::fill(s.R.begin(), s.R.end(), 0);
  std::fill(s.F.begin(), s.F.end(), 0);
  std::fill(s.K.begin(), s.K.end(), 1);
  std::fill(s.M.begin(), s.M.end(), 0);
  s.list.clear();
  s.listHead = 0;
  s.occupied.clear();

  for (int32_t x = 0; x < s.cols; x++) {
    if (!maps.occupied(x, y0))
      continue;

    const int32_t lo = maps.minAt(x, y0);
    const int32_t hi = maps.maxAt(x, y0);
    for (int32_t z = lo; z <= hi; z++) {
      s.F[s.at(z, x)] = 1;
      s.K[s.at(z, x)] = 0;
    }

    for (int32_t z : {lo, hi}) {
      const size_t i = s.at(z, x);
      if (s.R[i])
        continue;
      s.R[i] = 1;
      s.K[i] = 1;
      s.occupied.push_back({z, x});
    }
  }

  for (const auto& seed : s.occupied) {
    for (int32_t dz = -1; dz <= 1; dz++) {
      for (int32_t dx = -1; dx <= 1; dx++) {
        const int32_t z = seed.z + dz;
        const int32_t x = seed.x + dx;
        if (!s.inside(z, x) || s.M[s.at(z, x)])
          continue;
        s.M[s.at(z, x)] = 1;
        s.list.push_back({z, x});
      }
    }
  }
  std::sort(s.list.begin(), s.list.end());
}

SectionBuffers
buildSection(const DepthmapPair& maps, int32_t y0, std::span<const uint8_t> prev)
{
  SectionBuffers s(maps.depth, maps.width);
  if (prev.size() != s.P.size())
    throw CodecError(ErrorCode::kSizeMismatch, "previous section has wrong size");
  std::copy(prev.begin(), prev.end(), s.P.begin());
  initSection(s, maps, y0);
  return s;
}

//============================================================================

namespace {

  constexpr std::array<int, 9> kPow3 = {1, 3, 9, 27, 81, 243, 729, 2187, 6561};

  // I(A) and J(B) for the crops centred on (z, x), without materializing
  // the patches.  Patch cell (i, j) has weight position i + 3j.
  inline std::pair<int, int>
  cropIndices(const SectionBuffers& s, int32_t z, int32_t x)
  {
    int a = 0;
    int b = 0;
    for (int j = 0; j < 3; j++) {
      const int32_t xx = x + j - 1;
      for (int i = 0; i < 3; i++) {
        const int32_t zz = z + i - 1;
        const int pos = i + 3 * j;
        if (s.inside(zz, xx)) {
          const size_t idx = s.at(zz, xx);
          a += (s.R[idx] + s.K[idx]) * kPow3[pos];
          b |= s.P[idx] << pos;
        } else {
          a += kPow3[pos];
        }
      }
    }
    return {a, b};
  }

  template<typename CodeBit>
  uint64_t
  runSection(
    SectionBuffers& s,
    ContextModel& models,
    const NormTables& tables,
    CodeBit&& codeBit,
    std::vector<Cell>* trace)
  {
    uint64_t decisions = 0;

    while (s.listHead < s.list.size()) {
      const Cell cell = s.list[s.listHead++];
      const size_t idx = s.at(cell.z, cell.x);
      if (s.K[idx])
        continue;

      const auto [aIndex, bIndex] = cropIndices(s, cell.z, cell.x);
      BinaryModel& model = models[normalizedContext(aIndex, bIndex, tables)];
      const int bit = codeBit(idx, model);
      decisions++;
      if (trace)
        trace->push_back(cell);

      s.K[idx] = 1;
      s.R[idx] = uint8_t(bit);
      if (!bit)
        continue;

      s.occupied.push_back(cell);
      for (int32_t dz = -1; dz <= 1; dz++) {
        for (int32_t dx = -1; dx <= 1; dx++) {
          const int32_t z = cell.z + dz;
          const int32_t x = cell.x + dx;
          if (!s.inside(z, x))
            continue;
          const size_t n = s.at(z, x);
          if (s.K[n] || s.M[n])
            continue;
          s.M[n] = 1;
          s.list.push_back({z, x});
        }
      }
    }

    return decisions;
  }

}  // namespace

uint64_t
encodeSection(
  SectionBuffers& s,
  ContextModel& models,
  const NormTables& tables,
  ArithmeticEncoder& enc,
  std::vector<Cell>* trace)
{
  return runSection(
    s, models, tables,
    [&](size_t idx, BinaryModel& model) {
      const int bit = s.T[idx];
      enc.encode(bit, model);
      return bit;
    },
    trace);
}

uint64_t
decodeSection(
  SectionBuffers& s,
  ContextModel& models,
  const NormTables& tables,
  ArithmeticDecoder& dec,
  std::vector<Cell>* trace)
{
  return runSection(
    s, models, tables,
    [&](size_t, BinaryModel& model) { return dec.decode(model); }, trace);
}

//============================================================================

uint64_t
SweepResult::decisions() const
{
  return std::accumulate(
    decisionsPerSection.begin(), decisionsPerSection.end(), uint64_t(0));
}

namespace {

  template<typename CodeSection>
  SweepResult
  runSweep(
    const DepthmapPair& maps,
    const std::vector<std::vector<Cell>>* truth,
    CodeSection&& codeSection)
  {
    SweepResult result;
    result.decisionsPerSection.reserve(maps.height);

    SectionBuffers s(maps.depth, maps.width);
    for (int32_t y0 = 0; y0 < maps.height; y0++) {
      initSection(s, maps, y0);

      if (truth) {
        for (const auto& c : (*truth)[y0]) {
          const size_t i = s.at(c.z, c.x);
          if (!s.F[i])
            throw CodecError(
              ErrorCode::kOutOfRange, "point outside the feasible region");
          s.T[i] = 1;
        }
      }

      result.decisionsPerSection.push_back(codeSection(s));

      for (const auto& c : s.occupied)
        result.points.push_back({c.x, y0, c.z});

      // P for the next section; R is rebuilt by initSection
      std::swap(s.P, s.R);
    }

    std::sort(result.points.begin(), result.points.end());
    return result;
  }

}  // namespace

SweepResult
encodeSweep(
  const VoxelCloud& cloud,
  const DepthmapPair& maps,
  ContextModel& models,
  const NormTables& tables,
  ArithmeticEncoder& enc)
{
  const auto& dims = cloud.dims();
  if (dims[0] != maps.width || dims[1] != maps.height || dims[2] != maps.depth)
    throw CodecError(ErrorCode::kSizeMismatch, "cloud and depthmap sizes differ");

  std::vector<std::vector<Cell>> sections(maps.height);
  for (const auto& p : cloud.points())
    sections[p[1]].push_back({p[2], p[0]});

  return runSweep(maps, &sections, [&](SectionBuffers& s) {
    return encodeSection(s, models, tables, enc);
  });
}

SweepResult
decodeSweep(
  const DepthmapPair& maps,
  ContextModel& models,
  const NormTables& tables,
  ArithmeticDecoder& dec)
{
  return runSweep(maps, nullptr, [&](SectionBuffers& s) {
    return decodeSection(s, models, tables, dec);
  });
}

//============================================================================

}  // namespace bvl
