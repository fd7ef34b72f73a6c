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

#include "bvl/ply_io.h"

#include "bvl/error.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>

namespace bvl {

//============================================================================

namespace {

  enum class ScalarType
  {
    kInt8,
    kUint8,
    kInt16,
    kUint16,
    kInt32,
    kUint32,
    kFloat32,
    kFloat64,
  };

  struct PlyProperty {
    std::string name;
    ScalarType type;
    bool isList = false;
    ScalarType countType = ScalarType::kUint8;
  };

  struct PlyElement {
    std::string name;
    size_t count = 0;
    std::vector<PlyProperty> properties;
  };

  [[noreturn]] void
  malformed(const std::string& what)
  {
    throw CodecError(ErrorCode::kMalformedInput, "ply: " + what);
  }

  ScalarType
  parseScalarType(std::string_view name)
  {
    if (name == "char" || name == "int8")
      return ScalarType::kInt8;
    if (name == "uchar" || name == "uint8")
      return ScalarType::kUint8;
    if (name == "short" || name == "int16")
      return ScalarType::kInt16;
    if (name == "ushort" || name == "uint16")
      return ScalarType::kUint16;
    if (name == "int" || name == "int32")
      return ScalarType::kInt32;
    if (name == "uint" || name == "uint32")
      return ScalarType::kUint32;
    if (name == "float" || name == "float32")
      return ScalarType::kFloat32;
    if (name == "double" || name == "float64")
      return ScalarType::kFloat64;
    malformed("unknown property type '" + std::string(name) + "'");
  }

  size_t
  scalarSize(ScalarType t)
  {
    switch (t) {
    case ScalarType::kInt8:
    case ScalarType::kUint8: return 1;
    case ScalarType::kInt16:
    case ScalarType::kUint16: return 2;
    case ScalarType::kInt32:
    case ScalarType::kUint32:
    case ScalarType::kFloat32: return 4;
    case ScalarType::kFloat64: return 8;
    }
    return 0;
  }

  std::vector<std::string_view>
  splitWords(std::string_view line)
  {
    std::vector<std::string_view> words;
    size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
        i++;
      size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
        j++;
      if (j > i)
        words.push_back(line.substr(i, j - i));
      i = j;
    }
    return words;
  }

  //--------------------------------------------------------------------------

  class BinaryReader {
  public:
    BinaryReader(std::span<const uint8_t> data) : _data(data) {}

    double read(ScalarType t)
    {
      const size_t n = scalarSize(t);
      if (_pos + n > _data.size())
        malformed("binary body truncated");

      // little-endian payload; assemble independently of host order
      uint64_t raw = 0;
      for (size_t i = 0; i < n; i++)
        raw |= uint64_t(_data[_pos + i]) << (8 * i);
      _pos += n;

      switch (t) {
      case ScalarType::kInt8: return int8_t(raw);
      case ScalarType::kUint8: return uint8_t(raw);
      case ScalarType::kInt16: return int16_t(raw);
      case ScalarType::kUint16: return uint16_t(raw);
      case ScalarType::kInt32: return int32_t(raw);
      case ScalarType::kUint32: return uint32_t(raw);
      case ScalarType::kFloat32: {
        uint32_t bits = uint32_t(raw);
        float f;
        std::memcpy(&f, &bits, 4);
        return f;
      }
      case ScalarType::kFloat64: {
        double d;
        std::memcpy(&d, &raw, 8);
        return d;
      }
      }
      return 0;
    }

  private:
    std::span<const uint8_t> _data;
    size_t _pos = 0;
  };

  class AsciiReader {
  public:
    AsciiReader(std::span<const uint8_t> data)
      : _text(reinterpret_cast<const char*>(data.data()), data.size())
    {}

    double read(ScalarType)
    {
      while (_pos < _text.size()
             && std::isspace(static_cast<unsigned char>(_text[_pos])))
        _pos++;
      if (_pos >= _text.size())
        malformed("ascii body truncated");

      size_t end = _pos;
      while (end < _text.size()
             && !std::isspace(static_cast<unsigned char>(_text[end])))
        end++;

      std::string token(_text.substr(_pos, end - _pos));
      char* tail = nullptr;
      double value = std::strtod(token.c_str(), &tail);
      if (tail != token.c_str() + token.size())
        malformed("bad number '" + token + "'");
      _pos = end;
      return value;
    }

  private:
    std::string_view _text;
    size_t _pos = 0;
  };

  int32_t
  toCoordinate(double v)
  {
    if (!std::isfinite(v) || v != std::floor(v))
      malformed("non-integral coordinate");
    if (v < 0)
      throw CodecError(ErrorCode::kOutOfRange, "ply: negative coordinate");
    if (v > double(std::numeric_limits<int32_t>::max() - 1))
      throw CodecError(ErrorCode::kOutOfRange, "ply: coordinate too large");
    return int32_t(v);
  }

  template<typename Reader>
  std::vector<Point3>
  readBody(Reader& reader, const std::vector<PlyElement>& elements)
  {
    std::vector<Point3> points;

    for (const auto& element : elements) {
      const bool isVertex = element.name == "vertex";
      std::array<int, 3> slot{-1, -1, -1};
      if (isVertex) {
        for (size_t i = 0; i < element.properties.size(); i++) {
          const auto& prop = element.properties[i];
          if (prop.isList)
            continue;
          if (prop.name == "x")
            slot[0] = int(i);
          else if (prop.name == "y")
            slot[1] = int(i);
          else if (prop.name == "z")
            slot[2] = int(i);
        }
        if (slot[0] < 0 || slot[1] < 0 || slot[2] < 0)
          malformed("vertex element lacks x, y or z");
        points.reserve(element.count);
      }

      for (size_t n = 0; n < element.count; n++) {
        Point3 p{};
        for (size_t i = 0; i < element.properties.size(); i++) {
          const auto& prop = element.properties[i];
          if (prop.isList) {
            double count = reader.read(prop.countType);
            if (count < 0 || count != std::floor(count))
              malformed("bad list length");
            for (size_t k = 0; k < size_t(count); k++)
              reader.read(prop.type);
            continue;
          }

          double v = reader.read(prop.type);
          if (!isVertex)
            continue;
          for (int axis = 0; axis < 3; axis++) {
            if (slot[axis] == int(i))
              p[axis] = toCoordinate(v);
          }
        }
        if (isVertex)
          points.push_back(p);
      }
    }

    return points;
  }

}  // namespace

//============================================================================

VoxelCloud
parsePly(std::span<const uint8_t> bytes, std::optional<Dims3> dims)
{
  std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());

  size_t pos = 0;
  auto nextLine = [&]() -> std::string_view {
    if (pos >= text.size())
      malformed("header truncated");
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos)
      malformed("header truncated");
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    return line;
  };

  if (nextLine() != "ply")
    malformed("missing 'ply' magic");

  std::optional<PlyFormat> format;
  std::vector<PlyElement> elements;

  for (;;) {
    auto words = splitWords(nextLine());
    if (words.empty())
      continue;

    const auto& key = words[0];
    if (key == "end_header")
      break;
    if (key == "comment" || key == "obj_info")
      continue;

    if (key == "format") {
      if (words.size() < 2)
        malformed("bad format line");
      if (words[1] == "ascii")
        format = PlyFormat::kAscii;
      else if (words[1] == "binary_little_endian")
        format = PlyFormat::kBinaryLittleEndian;
      else
        malformed("unsupported format '" + std::string(words[1]) + "'");
    } else if (key == "element") {
      if (words.size() != 3)
        malformed("bad element line");
      PlyElement element;
      element.name = words[1];
      auto [ptr, ec] = std::from_chars(
        words[2].data(), words[2].data() + words[2].size(), element.count);
      if (ec != std::errc() || ptr != words[2].data() + words[2].size())
        malformed("bad element count");
      elements.push_back(std::move(element));
    } else if (key == "property") {
      if (elements.empty())
        malformed("property before element");
      PlyProperty prop;
      if (words.size() == 5 && words[1] == "list") {
        prop.isList = true;
        prop.countType = parseScalarType(words[2]);
        prop.type = parseScalarType(words[3]);
        prop.name = words[4];
        if (prop.countType == ScalarType::kFloat32
            || prop.countType == ScalarType::kFloat64)
          malformed("list count must be an integer type");
      } else if (words.size() == 3) {
        prop.type = parseScalarType(words[1]);
        prop.name = words[2];
      } else {
        malformed("bad property line");
      }
      elements.back().properties.push_back(std::move(prop));
    } else {
      malformed("unknown header keyword '" + std::string(key) + "'");
    }
  }

  if (!format)
    malformed("missing format line");

  bool hasVertex = false;
  for (const auto& e : elements)
    hasVertex |= e.name == "vertex";
  if (!hasVertex)
    malformed("no vertex element");

  auto body = bytes.subspan(pos);
  std::vector<Point3> points;
  if (*format == PlyFormat::kAscii) {
    AsciiReader reader(body);
    points = readBody(reader, elements);
  } else {
    BinaryReader reader(body);
    points = readBody(reader, elements);
  }

  if (dims)
    return VoxelCloud(*dims, std::move(points));
  return VoxelCloud::fromPoints(std::move(points));
}

//----------------------------------------------------------------------------

std::vector<uint8_t>
writePly(const VoxelCloud& cloud, PlyFormat format)
{
  std::ostringstream header;
  header << "ply\n"
         << "format "
         << (format == PlyFormat::kAscii ? "ascii" : "binary_little_endian")
         << " 1.0\n"
         << "element vertex " << cloud.size() << "\n"
         << "property int x\n"
         << "property int y\n"
         << "property int z\n"
         << "end_header\n";

  std::string head = header.str();
  std::vector<uint8_t> out(head.begin(), head.end());

  if (format == PlyFormat::kAscii) {
    std::string line;
    for (const auto& p : cloud.points()) {
      line = std::to_string(p[0]) + " " + std::to_string(p[1]) + " "
        + std::to_string(p[2]) + "\n";
      out.insert(out.end(), line.begin(), line.end());
    }
  } else {
    out.reserve(out.size() + cloud.size() * 12);
    for (const auto& p : cloud.points()) {
      for (int k = 0; k < 3; k++) {
        uint32_t v = uint32_t(p[k]);
        for (int b = 0; b < 4; b++)
          out.push_back(uint8_t(v >> (8 * b)));
      }
    }
  }
  return out;
}

//============================================================================

std::vector<uint8_t>
readFileBytes(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw CodecError(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<uint8_t> bytes(
    (std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad())
    throw CodecError(ErrorCode::kIo, "read failed: " + path.string());
  return bytes;
}

void
writeFileBytes(const std::filesystem::path& path, std::span<const uint8_t> bytes)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw CodecError(ErrorCode::kIo, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  if (!out)
    throw CodecError(ErrorCode::kIo, "write failed: " + path.string());
}

VoxelCloud
readPlyFile(const std::filesystem::path& path, std::optional<Dims3> dims)
{
  auto bytes = readFileBytes(path);
  return parsePly(bytes, dims);
}

void
writePlyFile(
  const std::filesystem::path& path, const VoxelCloud& cloud, PlyFormat format)
{
  writeFileBytes(path, writePly(cloud, format));
}

//============================================================================

}  // namespace bvl
