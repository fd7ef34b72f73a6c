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
// MSB-first bit packing.  The final byte is zero padded.

class BitWriter {
public:
  void write(uint64_t value, int bits);

  uint64_t bitLength() const { return _bits; }

  std::vector<uint8_t> finish();

private:
  std::vector<uint8_t> _bytes;
  uint64_t _bits = 0;
};

class BitReader {
public:
  explicit BitReader(std::span<const uint8_t> bytes) : _bytes(bytes) {}

  // Throws CodecError(kTruncatedStream) on reading past the end.
  uint64_t read(int bits);

private:
  std::span<const uint8_t> _bytes;
  uint64_t _pos = 0;
};

//============================================================================
// Little-endian integer framing for the container.

class ByteWriter {
public:
  void u8(uint8_t v) { _bytes.push_back(v); }
  void u16(uint16_t v) { put(v, 2); }
  void u32(uint32_t v) { put(v, 4); }
  void raw(std::span<const uint8_t> bytes)
  {
    _bytes.insert(_bytes.end(), bytes.begin(), bytes.end());
  }

  std::vector<uint8_t>& bytes() { return _bytes; }

private:
  void put(uint64_t v, int n)
  {
    for (int i = 0; i < n; i++)
      _bytes.push_back(uint8_t(v >> (8 * i)));
  }

  std::vector<uint8_t> _bytes;
};

class ByteReader {
public:
  explicit ByteReader(std::span<const uint8_t> bytes) : _bytes(bytes) {}

  uint8_t u8() { return uint8_t(get(1)); }
  uint16_t u16() { return uint16_t(get(2)); }
  uint32_t u32() { return uint32_t(get(4)); }
  std::span<const uint8_t> raw(size_t n);

  size_t position() const { return _pos; }
  size_t remaining() const { return _bytes.size() - _pos; }

private:
  uint64_t get(int n);

  std::span<const uint8_t> _bytes;
  size_t _pos = 0;
};

//============================================================================

}  // namespace bvl
