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

#include <stdexcept>
#include <string>

namespace bvl {

//============================================================================

enum class ErrorCode
{
  kMalformedInput,
  kOutOfRange,
  kEmptyCloud,
  kTruncatedStream,
  kBadMagic,
  kVersionMismatch,
  kSizeMismatch,
  kIo,
};

const char* errorCodeName(ErrorCode code);

class CodecError : public std::runtime_error {
public:
  CodecError(ErrorCode code, const std::string& what)
    : std::runtime_error(what), _code(code)
  {}

  ErrorCode code() const { return _code; }

private:
  ErrorCode _code;
};

//============================================================================

}  // namespace bvl
