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

#include "bvl/bit_io.h"

#include "bvl/error.h"

namespace bvl {

//============================================================================

void
BitWriter::write(uint64_t value, int bits)
{
  for (int i = bits - 1; i >= 0; i--) {
    if ((_bits & 7) == 0)
      _bytes.push_back(0);
    if ((value >> i) & 1)
      _bytes.back() |= uint8_t(0x80 >> (_bits & 7));
    _bits++;
  }
}

std::vector<uint8_t>
BitWriter::finish()
{
  _bits = 0;
  return std::move(_bytes);
}

uint64_t
BitReader::read(int bits)
{
  uint64_t value = 0;
  for (int i = 0; i < bits; i++) {
    if ((_pos >> 3) >= _bytes.size())
      throw CodecError(ErrorCode::kTruncatedStream, "bit stream exhausted");
    const int bit = (_bytes[_pos >> 3] >> (7 - (_pos & 7))) & 1;
    value = (value << 1) | uint64_t(bit);
    _pos++;
  }
  return value;
}

//============================================================================

uint64_t
ByteReader::get(int n)
{
  if (remaining() < size_t(n))
    throw CodecError(ErrorCode::kTruncatedStream, "container truncated");
  uint64_t v = 0;
  for (int i = 0; i < n; i++)
    v |= uint64_t(_bytes[_pos + i]) << (8 * i);
  _pos += n;
  return v;
}

std::span<const uint8_t>
ByteReader::raw(size_t n)
{
  if (remaining() < n)
    throw CodecError(ErrorCode::kTruncatedStream, "container payload truncated");
  auto out = _bytes.subspan(_pos, n);
  _pos += n;
  return out;
}

//============================================================================

}  // namespace bvl
