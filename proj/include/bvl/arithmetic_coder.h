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

#include <cstdint>
#include <span>
#include <vector>

namespace bvl {

//============================================================================
// Adaptive binary probability model.  p(0) = c0 / (c0 + c1).  Counts start
// at (1, 1); when their sum exceeds kRescaleLimit both are halved, rounding
// up, so neither can reach zero.

struct BinaryModel {
  static constexpr uint32_t kRescaleLimit = 1u << 16;

  uint32_t c0 = 1;
  uint32_t c1 = 1;

  void update(int bit)
  {
    if (bit)
      c1++;
    else
      c0++;

    if (c0 + c1 > kRescaleLimit) {
      c0 = (c0 + 1) >> 1;
      c1 = (c1 + 1) >> 1;
    }
  }

  friend bool operator==(const BinaryModel&, const BinaryModel&) = default;
};

//============================================================================
// A terminated arithmetic-coded payload.

struct CodedStream {
  std::vector<uint8_t> bytes;

  uint64_t bitLength() const { return uint64_t(bytes.size()) * 8; }
};

//============================================================================
// Carry-propagating range coder: 64-bit low register, 32-bit range kept in
// [2^24, 2^32) after normalization, bytes emitted MSB first.
//
// flush() writes the five bytes of the low register, so the decoder never
// reads past the end of a well-formed stream; running out of input is
// therefore reported as truncation.  The first byte of every stream is the
// initial (zero) cache byte.  A stream with no coded symbols flushes to
// zero bytes.

class ArithmeticEncoder {
public:
  void encode(int bit, BinaryModel& model);

  // Equiprobable bit with no model.
  void encodeBypass(int bit);

  CodedStream flush();

  // Bytes emitted so far plus bytes pending in the carry cache.
  uint64_t approxBytes() const { return _out.size() + _cacheSize; }

  uint64_t symbolCount() const { return _symbols; }

private:
  void shiftLow();
  void normalize();

  uint64_t _low = 0;
  uint32_t _range = 0xFFFFFFFFu;
  uint8_t _cache = 0;
  uint64_t _cacheSize = 1;
  uint64_t _symbols = 0;
  std::vector<uint8_t> _out;
};

//----------------------------------------------------------------------------

class ArithmeticDecoder {
public:
  explicit ArithmeticDecoder(std::span<const uint8_t> bytes);

  // The code register is loaded on the first call, so an empty payload is
  // only an error if a symbol is requested from it.  Throws
  // CodecError(kTruncatedStream) on reading past the payload.
  int decode(BinaryModel& model);
  int decodeBypass();

private:
  uint8_t nextByte();
  void start();
  void normalize();

  std::span<const uint8_t> _in;
  size_t _pos = 0;
  uint32_t _code = 0;
  uint32_t _range = 0xFFFFFFFFu;
  bool _started = false;
};

//============================================================================
// Exp-Golomb (order 0) binarization coded through adaptive per-bin
// contexts: prefix bin i uses prefix[min(i, kBins - 1)], suffix bit i
// (counted from the MSB of the suffix) uses suffix[min(i, kBins - 1)].

struct ExpGolombContexts {
  static constexpr int kBins = 32;

  BinaryModel prefix[kBins];
  BinaryModel suffix[kBins];
};

void encodeExpGolomb(
  ArithmeticEncoder& enc, ExpGolombContexts& ctx, uint32_t value);

// Throws CodecError(kMalformedInput) if the prefix exceeds 31 bins.
uint32_t decodeExpGolomb(ArithmeticDecoder& dec, ExpGolombContexts& ctx);

// Sign interleaving: 0, 1, -1, 2, -2 ... -> 0, 1, 2, 3, 4 ...
inline uint32_t
interleaveSign(int32_t v)
{
  return v > 0 ? uint32_t(2 * int64_t(v) - 1) : uint32_t(-2 * int64_t(v));
}

inline int32_t
deinterleaveSign(uint32_t u)
{
  return (u & 1) ? int32_t((int64_t(u) + 1) / 2) : int32_t(-(int64_t(u) / 2));
}

//============================================================================

}  // namespace bvl
