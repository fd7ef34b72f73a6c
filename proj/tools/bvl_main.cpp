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
#include "bvl/bench.h"
#include "bvl/container.h"
#include "bvl/error.h"
#include "bvl/norm_context.h"
#include "bvl/ply_io.h"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>

using namespace bvl;

namespace {

struct CommonOptions {
  std::string permutation = "auto";
  int maxShells = 2;
  int bits = 0;
  std::string report = "text";
  std::string output;
};

EncodeOptions
toEncodeOptions(const CommonOptions& opts)
{
  EncodeOptions out;
  if (opts.permutation != "auto")
    out.permutation = std::stoi(opts.permutation);
  out.maxShells = opts.maxShells;
  if (opts.bits > 0)
    out.targetBits = opts.bits;
  return out;
}

void
addCodingOptions(CLI::App* cmd, CommonOptions& opts)
{
  cmd->add_option("--permutation", opts.permutation, "auto or an id 0-5")
    ->check(CLI::IsMember({"auto", "0", "1", "2", "3", "4", "5"}));
  cmd->add_option("--max-shells", opts.maxShells, "shells before raw coding")
    ->check(CLI::Range(0, 255));
  cmd->add_option("--bits", opts.bits, "quantize to this bit depth first")
    ->check(CLI::PositiveNumber);
  cmd->add_option("--report", opts.report, "rate report format")
    ->check(CLI::IsMember({"csv", "text"}));
}

int
runEncode(const std::string& input, const CommonOptions& opts)
{
  auto result = encodeFile(input, toEncodeOptions(opts));

  std::string output = opts.output.empty() ? input + ".bvl" : opts.output;
  writeFileBytes(output, result.container);

  if (opts.report == "csv") {
    std::cout << "file,points,permutation,shells,stage1_bits,stage2_bits,"
                 "residual_bits,total_bits,bpv,encode_ms,decode_ms\n";
    writeReportCsv(std::cout, input, result.report);
  } else {
    writeReportText(std::cout, input, result.report);
    std::cout << "  wrote        " << output << " (" << result.container.size()
              << " bytes)\n";
  }
  return 0;
}

int
runDecode(const std::string& input, const std::string& outputArg, bool ascii)
{
  auto bytes = readFileBytes(input);
  VoxelCloud cloud = decodeContainer(bytes);

  std::string output = outputArg.empty() ? input + ".ply" : outputArg;
  writePlyFile(
    output, cloud, ascii ? PlyFormat::kAscii : PlyFormat::kBinaryLittleEndian);
  std::cerr << "decoded " << cloud.size() << " points to " << output << '\n';
  return 0;
}

int
runBenchCommand(const std::string& dir, const CommonOptions& opts)
{
  BenchResult result = runBench(dir, toEncodeOptions(opts));

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!opts.output.empty()) {
    file.open(opts.output);
    if (!file)
      throw CodecError(ErrorCode::kIo, "cannot create " + opts.output);
    out = &file;
  }

  if (opts.report == "csv")
    writeBenchCsv(*out, result);
  else
    writeBenchText(*out, result);

  for (const auto& skip : result.skipped)
    std::cerr << "skipped " << skip.file << ": " << skip.message << '\n';

  bool allLossless = true;
  for (const auto& row : result.rows)
    allLossless &= row.lossless;
  return allLossless ? 0 : 1;
}

//----------------------------------------------------------------------------

bool
checkTables(const NormTables& t)
{
  for (int index = 0; index < kTernaryPatchCount; index++) {
    const TernaryPatch a = ternaryFromIndex(index);
    const TernaryPatch canonical = rot90(a, t.alphaStar[index]);
    if (indexA(canonical) != t.iStar[index])
      return false;
    for (int k = 0; k < 4; k++) {
      const TernaryPatch r = rot90(a, k);
      if (scoreW(r) > scoreW(canonical))
        return false;
      if (t.iStar[indexA(r)] != t.iStar[index])
        return false;
    }
  }
  return true;
}

bool
checkCoderRoundTrip()
{
  std::mt19937_64 rng(7);
  std::vector<BinaryModel> encModels(16), decModels(16);
  std::vector<std::pair<int, int>> symbols;
  std::bernoulli_distribution coin(0.2);
  std::uniform_int_distribution<int> pick(0, 15);

  ArithmeticEncoder enc;
  for (int n = 0; n < 100000; n++) {
    int m = pick(rng);
    int bit = coin(rng) ? 1 : 0;
    symbols.push_back({m, bit});
    enc.encode(bit, encModels[m]);
  }
  CodedStream stream = enc.flush();

  ArithmeticDecoder dec(stream.bytes);
  for (const auto& [m, bit] : symbols) {
    if (dec.decode(decModels[m]) != bit)
      return false;
  }
  return encModels == decModels;
}

int
runSelftest()
{
  auto start = std::chrono::steady_clock::now();
  const NormTables tables = buildNormTables();
  const bool tablesOk = checkTables(tables);
  double ms = std::chrono::duration<double, std::milli>(
                std::chrono::steady_clock::now() - start)
                .count();
  std::cout << (tablesOk ? "PASS" : "FAIL")
            << "  normalization tables (19683 patches, " << ms << " ms)\n";

  const bool coderOk = checkCoderRoundTrip();
  std::cout << (coderOk ? "PASS" : "FAIL")
            << "  arithmetic coder round trip (100000 symbols)\n";

  return tablesOk && coderOk ? 0 : 1;
}

}  // namespace

//============================================================================

int
main(int argc, char** argv)
{
  CLI::App app{"Bounding-volume lossless point cloud geometry codec"};
  app.require_subcommand(1);

  CommonOptions encodeOpts;
  std::string encodeInput;
  auto* encode = app.add_subcommand("encode", "compress a PLY file");
  encode->add_option("input", encodeInput, "input PLY")->required()->check(CLI::ExistingFile);
  encode->add_option("--output,-o", encodeOpts.output, "container path (default input.bvl)");
  addCodingOptions(encode, encodeOpts);

  std::string decodeInput, decodeOutput;
  bool decodeAscii = false;
  auto* decode = app.add_subcommand("decode", "decompress a container to PLY");
  decode->add_option("input", decodeInput, "container")->required()->check(CLI::ExistingFile);
  decode->add_option("--output,-o", decodeOutput, "PLY path (default input.ply)");
  decode->add_flag("--ascii", decodeAscii, "write ASCII PLY");

  CommonOptions benchOpts;
  std::string benchDir;
  auto* bench = app.add_subcommand("bench", "encode and decode every .ply in a directory");
  bench->add_option("directory", benchDir, "dataset directory")->required()->check(CLI::ExistingDirectory);
  bench->add_option("--output,-o", benchOpts.output, "write the table here instead of stdout");
  addCodingOptions(bench, benchOpts);

  app.add_subcommand("selftest", "check normalization tables and the coder");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*encode)
      return runEncode(encodeInput, encodeOpts);
    if (*decode)
      return runDecode(decodeInput, decodeOutput, decodeAscii);
    if (*bench)
      return runBenchCommand(benchDir, benchOpts);
    return runSelftest();
  } catch (const CodecError& e) {
    std::cerr << "error (" << errorCodeName(e.code()) << "): " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
