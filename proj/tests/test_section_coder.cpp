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

#include "bvl/error.h"
#include "bvl/section_coder.h"

#include "doctest.h"
#include "support/oracles.h"
#include "support/shapes.h"

#include <random>
#include <set>

using namespace bvl;

namespace {

using CellSet = std::set<std::pair<int32_t, int32_t>>;

// One-section depthmaps (height 1) derived from a true section image.
DepthmapPair
mapsFor(const test::SectionImage& truth)
{
  DepthmapPair d(truth.cols, 1, truth.rows);
  for (const auto& [x, mm] : test::columnExtrema(truth)) {
    d.occ[x] = 1;
    d.zmin[x] = mm.first;
    d.zmax[x] = mm.second;
  }
  return d;
}

test::SectionImage
randomSection(int32_t rows, int32_t cols, double density, std::mt19937_64& rng)
{
  test::SectionImage s{rows, cols, std::vector<uint8_t>(size_t(rows) * cols)};
  std::bernoulli_distribution on(density);
  for (auto& c : s.cells)
    c = on(rng);
  return s;
}

std::vector<uint8_t>
randomPrev(int32_t rows, int32_t cols, std::mt19937_64& rng)
{
  std::vector<uint8_t> p(size_t(rows) * cols);
  for (auto& c : p)
    c = uint8_t(rng() & 1);
  return p;
}

struct SectionRun {
  std::vector<Cell> encTrace, decTrace;
  uint64_t encBits = 0, decBits = 0;
  SectionBuffers enc, dec;
};

SectionRun
runSection(const test::SectionImage& truth, std::span<const uint8_t> prev)
{
  const NormTables& t = defaultNormTables();
  const DepthmapPair maps = mapsFor(truth);

  SectionRun run;
  run.enc = buildSection(maps, 0, prev);
  run.enc.T = truth.cells;
  ContextModel encModels;
  ArithmeticEncoder coder;
  run.encBits = encodeSection(run.enc, encModels, t, coder, &run.encTrace);
  auto stream = coder.flush();

  run.dec = buildSection(maps, 0, prev);
  ContextModel decModels;
  ArithmeticDecoder decoder(stream.bytes);
  run.decBits = decodeSection(run.dec, decModels, t, decoder, &run.decTrace);
  return run;
}

}  // namespace

//============================================================================

TEST_CASE("section initialisation")
{
  DepthmapPair d(3, 1, 12);
  d.occ[1] = 1;
  d.zmin[1] = 2;
  d.zmax[1] = 9;
  d.occ[2] = 1;
  d.zmin[2] = d.zmax[2] = 5;

  std::vector<uint8_t> prev(12 * 3, 0);
  SectionBuffers s = buildSection(d, 0, prev);

  SUBCASE("empty column is entirely known and unseeded")
  {
    for (int32_t z = 0; z < 12; z++) {
      CHECK(s.F[s.at(z, 0)] == 0);
      CHECK(s.K[s.at(z, 0)] == 1);
      CHECK(s.R[s.at(z, 0)] == 0);
    }
  }

  SUBCASE("single-depth column")
  {
    for (int32_t z = 0; z < 12; z++) {
      CHECK(s.K[s.at(z, 2)] == 1);
      CHECK(s.F[s.at(z, 2)] == (z == 5));
      CHECK(s.R[s.at(z, 2)] == (z == 5));
    }
  }

  SUBCASE("column 2..9 leaves six unknown cells")
  {
    int unknown = 0;
    for (int32_t z = 0; z < 12; z++) {
      CHECK(s.F[s.at(z, 1)] == (z >= 2 && z <= 9));
      if (!s.K[s.at(z, 1)])
        unknown++;
    }
    CHECK(unknown == 6);
    CHECK(s.K[s.at(2, 1)] == 1);
    CHECK(s.K[s.at(9, 1)] == 1);
  }

  SUBCASE("list is the row-major dilation of the seeds")
  {
    CellSet expected;
    for (auto [z, x] : {std::pair{2, 1}, {9, 1}, {5, 2}})
      for (int dz = -1; dz <= 1; dz++)
        for (int dx = -1; dx <= 1; dx++)
          if (s.inside(z + dz, x + dx))
            expected.insert({z + dz, x + dx});

    REQUIRE(s.list.size() == expected.size());
    CHECK(std::is_sorted(s.list.begin(), s.list.end()));
    for (const auto& c : s.list) {
      CHECK(expected.count({c.z, c.x}));
      CHECK(s.M[s.at(c.z, c.x)] == 1);
    }
    CHECK(std::count(s.M.begin(), s.M.end(), 1) == long(expected.size()));
  }

  SUBCASE("size mismatches are rejected")
  {
    std::vector<uint8_t> wrong(5, 0);
    CHECK_THROWS_AS(buildSection(d, 0, wrong), CodecError);
    CHECK_THROWS_AS(buildSection(d, 1, prev), CodecError);
  }
}

TEST_CASE("thin columns need no coded decisions")
{
  test::SectionImage truth{10, 6, std::vector<uint8_t>(60, 0)};
  auto set = [&](int z, int x) { truth.cells[z * 6 + x] = 1; };
  set(1, 0);
  set(2, 0);
  set(4, 1);
  set(7, 2);
  set(8, 2);
  set(0, 5);
  set(9, 5);  // thickness 10 but only two points, interior not adjacent to a 1
  std::vector<uint8_t> prev(60, 0);

  auto run = runSection(truth, prev);
  // column 5 interior cells next to the seeds are still visited
  CHECK(run.encBits == 2);
  CHECK(run.decBits == 2);

  test::SectionImage thin{10, 6, std::vector<uint8_t>(60, 0)};
  thin.cells[1 * 6 + 0] = thin.cells[2 * 6 + 0] = thin.cells[4 * 6 + 1] = 1;
  thin.cells[7 * 6 + 3] = thin.cells[8 * 6 + 3] = 1;
  auto thinRun = runSection(thin, prev);
  CHECK(thinRun.encBits == 0);
  CHECK(thinRun.enc.R == thin.cells);
}

TEST_CASE("solid column codes each interior cell once")
{
  test::SectionImage truth{8, 1, std::vector<uint8_t>(8, 1)};
  std::vector<uint8_t> prev(8, 0);
  auto run = runSection(truth, prev);

  CHECK(run.encBits == 6);
  CHECK(run.decBits == 6);
  CHECK(run.dec.R == truth.cells);

  CellSet coded;
  for (const auto& c : run.encTrace)
    coded.insert({c.z, c.x});
  CHECK(coded.size() == run.encTrace.size());
}

TEST_CASE("coded cells match the reachability oracle")
{
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; trial++) {
    const int32_t rows = 1 + int32_t(rng() % 32);
    const int32_t cols = 1 + int32_t(rng() % 32);
    const double density = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
    const auto truth = randomSection(rows, cols, density, rng);
    const auto prev = randomPrev(rows, cols, rng);

    auto run = runSection(truth, prev);
    const CellSet expected = test::expectedCodedCells(truth);

    CellSet coded;
    for (const auto& c : run.encTrace)
      coded.insert({c.z, c.x});

    REQUIRE(coded.size() == run.encTrace.size());  // nothing coded twice
    CHECK(coded == expected);
    CHECK(run.encBits == run.decBits);
    CHECK(run.encTrace == run.decTrace);
    CHECK(run.enc.R == run.dec.R);

    for (size_t i = 0; i < truth.cells.size(); i++) {
      CHECK((run.dec.R[i] == 0 || run.dec.K[i] == 1));
      if (!run.dec.F[i]) {
        CHECK(run.dec.R[i] == 0);
        CHECK(run.dec.K[i] == 1);
      }
      // decoded occupancy never contradicts the truth
      if (run.dec.R[i])
        CHECK(truth.cells[i] == 1);
    }
    for (const auto& c : run.encTrace)
      CHECK(run.enc.F[run.enc.at(c.z, c.x)] == 1);
  }
}

//============================================================================

namespace {

SweepResult
sweepRoundTrip(const VoxelCloud& cloud, std::vector<uint64_t>* decDecisions = nullptr)
{
  const NormTables& t = defaultNormTables();
  const DepthmapPair maps = project(cloud);

  ContextModel em;
  ArithmeticEncoder enc;
  SweepResult encoded = encodeSweep(cloud, maps, em, t, enc);
  auto stream = enc.flush();

  ContextModel dm;
  ArithmeticDecoder dec(stream.bytes);
  SweepResult decoded = decodeSweep(maps, dm, t, dec);
  CHECK(decoded.points == encoded.points);
  CHECK(decoded.decisionsPerSection == encoded.decisionsPerSection);
  if (decDecisions)
    *decDecisions = decoded.decisionsPerSection;
  return decoded;
}

}  // namespace

TEST_CASE("a cloud equal to its own depthmaps needs no Stage II bits")
{
  auto cloud = test::plane(32, 0.3, -0.2, 12);
  std::vector<Point3> pts(cloud.points().begin(), cloud.points().end());
  for (auto p : cloud.points())
    if (p[2] + 5 < 32)
      pts.push_back({p[0], p[1], p[2] + 5});
  VoxelCloud twoLayers({32, 32, 32}, pts);

  auto r = sweepRoundTrip(twoLayers);
  CHECK(r.decisions() > 0);  // cells beside the seeds are still tested

  auto single = sweepRoundTrip(cloud);
  CHECK(single.decisions() == 0);
  CHECK(single.points.size() == cloud.size());
}

TEST_CASE("solid cube is reconstructed in one sweep")
{
  auto cube = test::solidCube(16, 0, 16);
  auto r = sweepRoundTrip(cube);
  CHECK(std::vector<Point3>(cube.points().begin(), cube.points().end()) == r.points);
  CHECK(test::expectedShell(cube) == r.points);
}

TEST_CASE("hollow sphere is reconstructed in one sweep")
{
  auto sphere = test::hollowSphere(64, 20);
  auto r = sweepRoundTrip(sphere);
  CHECK(std::vector<Point3>(sphere.points().begin(), sphere.points().end()) == r.points);
}

TEST_CASE("sweep reconstruction equals the per-section connectivity oracle")
{
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 6; trial++) {
    auto cloud = test::randomSparse({20, 12, 24}, 0.05 + 0.08 * trial, rng);
    auto r = sweepRoundTrip(cloud);
    CHECK(test::expectedShell(cloud) == r.points);
  }
}

TEST_CASE("sweep rejects mismatched depthmaps")
{
  auto cloud = test::solidCube(8, 0, 4);
  DepthmapPair wrong(7, 8, 8);
  ContextModel m;
  ArithmeticEncoder enc;
  CHECK_THROWS_AS(encodeSweep(cloud, wrong, m, defaultNormTables(), enc), CodecError);
}
