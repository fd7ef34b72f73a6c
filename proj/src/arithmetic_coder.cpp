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

#include "bvl/arithmetic_coder.h"

#include "bvl/error.h"

namespace bvl {

//============================================================================

namespace {

  constexpr uint32_t kTopValue = 1u << 24;

  inline uint32_t
  splitPoint(uint32_t range, const BinaryModel& model)
  {
    // range >= 2^24 and c0 + c1 <= 2^16 + 1 keep both sub-intervals >= 2^7
    return uint32_t((uint64_t(range) * model.c0) / (model.c0 + model.c1));
  }

}  // namespace

//============================================================================

void
ArithmeticEncoder::encode(int bit, BinaryModel& model)
{
  const uint32_t bound = splitPoint(_range, model);
  if (!bit) {
    _range = bound;
  } else {
    _low += bound;
    _range -= bound;
  }
  model.update(bit);
  _symbols++;
  normalize();
}

void
ArithmeticEncoder::encodeBypass(int bit)
{
  _range >>= 1;
  if (bit)
    _low += _range;
  _symbols++;
  normalize();
}

void
ArithmeticEncoder::normalize()
{
  while (_range < kTopValue) {
    _range <<= 8;
    shiftLow();
  }
}

//----------------------------------------------------------------------------

void
ArithmeticEncoder::shiftLow()
{
  if (uint32_t(_low) < 0xFF000000u || (_low >> 32) != 0) {
    const uint8_t carry = uint8_t(_low >> 32);
    uint8_t pending = _cache;
    do {
      _out.push_back(uint8_t(pending + carry));
      pending = 0xFF;
    } while (--_cacheSize != 0);
    _cache = uint8_t(_low >> 24);
  }
  _cacheSize++;
  _low = (_low & 0x00FFFFFFu) << 8;
}

//----------------------------------------------------------------------------

CodedStream
ArithmeticEncoder::flush()
{
  CodedStream stream;
  if (_symbols) {
    for (int i = 0; i < 5; i++)
      shiftLow();
    stream.bytes = std::move(_out);
  }

  _out.clear();
  _low = 0;
  _range = 0xFFFFFFFFu;
  _cache = 0;
  _cacheSize = 1;
  _symbols = 0;
  return stream;
}

//============================================================================

ArithmeticDecoder::ArithmeticDecoder(std::span<const uint8_t> bytes)
  : _in(bytes)
{}

void
ArithmeticDecoder::start()
{
  for (int i = 0; i < 5; i++)
    _code = (_code << 8) | nextByte();
  _started = true;
}

uint8_t
ArithmeticDecoder::nextByte()
{
  if (_pos >= _in.size())
    throw CodecError(ErrorCode::kTruncatedStream, "arithmetic stream exhausted");
  return _in[_pos++];
}

void
ArithmeticDecoder::normalize()
{
  while (_range < kTopValue) {
    _range <<= 8;
    _code = (_code << 8) | nextByte();
  }
}

int
ArithmeticDecoder::decode(BinaryModel& model)
{
  if (!_started)
    start();

  const uint32_t bound = splitPoint(_range, model);
  int bit;
  if (_code < bound) {
    _range = bound;
    bit = 0;
  } else {
    _code -= bound;
    _range -= bound;
    bit = 1;
  }
  model.update(bit);
  normalize();
  return bit;
}

int
ArithmeticDecoder::decodeBypass()
{
  if (!_started)
    start();

  _range >>= 1;
  int bit = 0;
  if (_code >= _range) {
    _code -= _range;
    bit = 1;
  }
  normalize();
  return bit;
}

//============================================================================

void
encodeExpGolomb(ArithmeticEncoder& enc, ExpGolombContexts& ctx, uint32_t value)
{
  const uint64_t v = uint64_t(value) + 1;
  int k = 0;
  while ((v >> (k + 1)) != 0)
    k++;

  constexpr int kLast = ExpGolombContexts::kBins - 1;
  for (int i = 0; i < k; i++)
    enc.encode(1, ctx.prefix[std::min(i, kLast)]);
  enc.encode(0, ctx.prefix[std::min(k, kLast)]);

  for (int i = 0; i < k; i++) {
    const int bit = int((v >> (k - 1 - i)) & 1);
    enc.encode(bit, ctx.suffix[std::min(i, kLast)]);
  }
}

uint32_t
decodeExpGolomb(ArithmeticDecoder& dec, ExpGolombContexts& ctx)
{
  constexpr int kLast = ExpGolombContexts::kBins - 1;
  int k = 0;
  while (dec.decode(ctx.prefix[std::min(k, kLast)])) {
    if (++k > 32)
      throw CodecError(ErrorCode::kMalformedInput, "exp-golomb prefix too long");
  }

  uint64_t v = 1;
  for (int i = 0; i < k; i++)
    v = (v << 1) | uint64_t(dec.decode(ctx.suffix[std::min(i, kLast)]));

  if (v - 1 > 0xFFFFFFFFull)
    throw CodecError(ErrorCode::kMalformedInput, "exp-golomb value overflow");
  return uint32_t(v - 1);
}

//============================================================================

}  // namespace bvl
