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

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace bvl {

//============================================================================
// 3x3 neighbourhood patches.  Cell (i, j): row i is the z offset (-1, 0, +1
// maps to rows 0, 1, 2), column j is the x offset.  Stored row major.

template<typename Tag>
struct Patch3x3 {
  std::array<uint8_t, 9> cells{};

  uint8_t& operator()(int i, int j) { return cells[3 * i + j]; }
  uint8_t operator()(int i, int j) const { return cells[3 * i + j]; }

  friend bool operator==(const Patch3x3&, const Patch3x3&) = default;
};

struct TernaryTag {};
struct BinaryTag {};

// Entries in {0, 1, 2}: unknown, known empty, known occupied (R + K).
using TernaryPatch = Patch3x3<TernaryTag>;

// Entries in {0, 1}: previous-section occupancy.
using BinaryPatch = Patch3x3<BinaryTag>;

constexpr int kTernaryPatchCount = 19683;  // 3^9
constexpr int kBinaryPatchCount = 512;     // 2^9

// I(A) = sum_{i,j} A(i,j) * 3^(i + 3j)   (column scan)
int indexA(const TernaryPatch& a);

// J(B) = sum_{i,j} B(i,j) * 2^(i + 3j)
int indexB(const BinaryPatch& b);

TernaryPatch ternaryFromIndex(int index);
BinaryPatch binaryFromIndex(int index);

// W(A) = sum_k v_k 3^k with
// v = [A00 A01 A10 A02 A11 A20 A12 A21 A22].
int scoreW(const TernaryPatch& a);

// k counterclockwise quarter turns in the (z, x) plane about the centre:
// out(i, j) = in(j, 2 - i) per turn.  k is taken modulo 4.
template<typename Tag>
Patch3x3<Tag>
rot90(const Patch3x3<Tag>& p, int k)
{
  Patch3x3<Tag> cur = p;
  for (int n = ((k % 4) + 4) % 4; n > 0; n--) {
    Patch3x3<Tag> next;
    for (int i = 0; i < 3; i++)
      for (int j = 0; j < 3; j++)
        next(i, j) = cur(j, 2 - i);
    cur = next;
  }
  return cur;
}

//============================================================================
// Rotation normalization tables.  For every ternary patch index:
//   alphaStar: the smallest quarter-turn count maximizing W,
//   iStar:     I of the patch rotated by alphaStar.
// rotatedB[k][J(B)] = J(rot90(B, k)) so the co-rotation of B is a lookup.

struct NormTables {
  std::vector<uint8_t> alphaStar;
  std::vector<uint16_t> iStar;
  std::array<std::array<uint16_t, kBinaryPatchCount>, 4> rotatedB;
};

NormTables buildNormTables();

// Process-wide tables, built on first use.
const NormTables& defaultNormTables();

//============================================================================
// Context label zeta = (i*, j*).

struct ContextLabel {
  uint16_t iStar = 0;
  uint16_t jStar = 0;

  uint32_t key() const { return uint32_t(iStar) * kBinaryPatchCount + jStar; }

  friend bool operator==(const ContextLabel&, const ContextLabel&) = default;
};

inline ContextLabel
normalizedContext(int aIndex, int bIndex, const NormTables& t)
{
  return {
    t.iStar[aIndex], t.rotatedB[t.alphaStar[aIndex]][bIndex]};
}

inline ContextLabel
normalizedContext(const TernaryPatch& a, const BinaryPatch& b, const NormTables& t)
{
  return normalizedContext(indexA(a), indexB(b), t);
}

//============================================================================
// Adaptive models keyed by context label, allocated on first touch.

class ContextModel {
public:
  BinaryModel& operator[](ContextLabel label) { return _models[label.key()]; }

  size_t size() const { return _models.size(); }

  void clear() { _models.clear(); }

private:
  std::unordered_map<uint32_t, BinaryModel> _models;
};

//============================================================================

}  // namespace bvl
