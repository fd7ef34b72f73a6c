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

#include "bvl/norm_context.h"

namespace bvl {

//============================================================================

int
indexA(const TernaryPatch& a)
{
  int index = 0;
  int weight = 1;
  for (int j = 0; j < 3; j++) {
    for (int i = 0; i < 3; i++) {
      index += a(i, j) * weight;
      weight *= 3;
    }
  }
  return index;
}

int
indexB(const BinaryPatch& b)
{
  int index = 0;
  for (int j = 0; j < 3; j++)
    for (int i = 0; i < 3; i++)
      index |= b(i, j) << (i + 3 * j);
  return index;
}

TernaryPatch
ternaryFromIndex(int index)
{
  TernaryPatch a;
  for (int j = 0; j < 3; j++) {
    for (int i = 0; i < 3; i++) {
      a(i, j) = uint8_t(index % 3);
      index /= 3;
    }
  }
  return a;
}

BinaryPatch
binaryFromIndex(int index)
{
  BinaryPatch b;
  for (int j = 0; j < 3; j++)
    for (int i = 0; i < 3; i++)
      b(i, j) = uint8_t((index >> (i + 3 * j)) & 1);
  return b;
}

//----------------------------------------------------------------------------

int
scoreW(const TernaryPatch& a)
{
  // anti-diagonal order from the (0,0) corner
  static constexpr std::array<std::array<int, 2>, 9> kOrder = {{
    {0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}, {1, 2}, {2, 1}, {2, 2},
  }};

  int w = 0;
  int weight = 1;
  for (const auto& [i, j] : kOrder) {
    w += a(i, j) * weight;
    weight *= 3;
  }
  return w;
}

//============================================================================

NormTables
buildNormTables()
{
  NormTables t;
  t.alphaStar.resize(kTernaryPatchCount);
  t.iStar.resize(kTernaryPatchCount);

  for (int index = 0; index < kTernaryPatchCount; index++) {
    const TernaryPatch a = ternaryFromIndex(index);

    int bestK = 0;
    int bestW = -1;
    TernaryPatch best;
    for (int k = 0; k < 4; k++) {
      TernaryPatch r = rot90(a, k);
      int w = scoreW(r);
      if (w > bestW) {
        bestW = w;
        bestK = k;
        best = r;
      }
    }

    t.alphaStar[index] = uint8_t(bestK);
    t.iStar[index] = uint16_t(indexA(best));
  }

  for (int k = 0; k < 4; k++) {
    for (int j = 0; j < kBinaryPatchCount; j++)
      t.rotatedB[k][j] = uint16_t(indexB(rot90(binaryFromIndex(j), k)));
  }

  return t;
}

const NormTables&
defaultNormTables()
{
  static const NormTables tables = buildNormTables();
  return tables;
}

//============================================================================

}  // namespace bvl
