#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include <grassclique/grassclique.hpp>

using namespace grassclique;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("grassclique_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path &path() const { return path_; }

private:
  fs::path path_;
};

} // namespace

TEST(Io, CertificateRoundTrip) {
  const Certificate c{2, 4, 2, 4, {1, 1, 0, 0, 1}, {{0, 5, 10}}, 5};
  const json j = certificate_to_json(c);
  EXPECT_EQ(j["poly"], "x^4+x+1");
  const Certificate back = certificate_from_json(j);
  EXPECT_EQ(back.poly, c.poly);
  EXPECT_EQ(back.generators, c.generators);
  EXPECT_EQ(back.M, 5u);

  json arr = j;
  arr["poly"] = {1, 1, 0, 0, 1};
  EXPECT_EQ(certificate_from_json(arr).poly, c.poly);

  json broken = j;
  broken.erase("generators");
  try {
    certificate_from_json(broken);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
  }
}

TEST(Io, LoadCertificateFile) {
  TempDir dir;
  const fs::path file = dir.path() / "cert.json";
  {
    std::ofstream out(file);
    out << R"({"q":2,"n":6,"k":3,"d":6,"poly":"x^6+x+1","generators":[[0,9,18]],"M":9})";
  }
  const Certificate c = load_certificate(file);
  EXPECT_TRUE(verify_certificate(c).pass);

  {
    std::ofstream out(dir.path() / "bad.json");
    out << "{not json";
  }
  EXPECT_THROW(load_certificate(dir.path() / "bad.json"), Error);
  EXPECT_THROW(load_certificate(dir.path() / "missing.json"), Error);
}

TEST(Io, OrbitCacheRoundTrip) {
  TempDir dir;
  const FieldCtx ctx = build_field(default_primitive_poly(2, 6));
  const OrbitSet set = enumerate_orbits(ctx, 3);
  ASSERT_TRUE(store_orbit_cache(dir.path(), ctx, set));
  const auto loaded = load_orbit_cache(dir.path(), ctx, 3);
  ASSERT_TRUE(loaded);
  ASSERT_EQ(loaded->orbits.size(), set.orbits.size());
  for (std::size_t i = 0; i < set.orbits.size(); ++i) {
    EXPECT_EQ(loaded->orbits[i].rep, set.orbits[i].rep);
    EXPECT_EQ(loaded->orbits[i].period, set.orbits[i].period);
    EXPECT_EQ(loaded->orbits[i].t, set.orbits[i].t);
    EXPECT_EQ(loaded->orbits[i].min_dist, set.orbits[i].min_dist);
  }
  EXPECT_EQ(loaded->counts_by_t, set.counts_by_t);
  EXPECT_FALSE(load_orbit_cache(dir.path(), ctx, 2));
}

TEST(Io, SingletonOrbitSerializesNullDistance) {
  const FieldCtx ctx = build_field(default_primitive_poly(2, 3));
  const OrbitSet set = enumerate_orbits(ctx, 3);
  const json j = orbit_set_to_json(set);
  EXPECT_TRUE(j["orbits"][0]["min_dist"].is_null());
  const auto back = orbit_set_from_json(ctx, 3, j);
  ASSERT_TRUE(back);
  EXPECT_EQ(back->orbits[0].min_dist, kInfiniteDistance);
}

TEST(Io, CacheRejectsMismatchedOrTamperedFiles) {
  const FieldCtx ctx = build_field(default_primitive_poly(2, 6));
  const FieldCtx other = build_field({2, 6, {1, 0, 0, 0, 0, 1, 1}});
  const OrbitSet set = enumerate_orbits(ctx, 2);
  const json good = orbit_set_to_json(set);
  ASSERT_TRUE(orbit_set_from_json(ctx, 2, good));
  EXPECT_FALSE(orbit_set_from_json(other, 2, good));
  EXPECT_FALSE(orbit_set_from_json(ctx, 3, good));

  json old_version = good;
  old_version["version"] = "0.0.1";
  EXPECT_FALSE(orbit_set_from_json(ctx, 2, old_version));

  json old_schema = good;
  old_schema["schema"] = kCacheSchema + 1;
  EXPECT_FALSE(orbit_set_from_json(ctx, 2, old_schema));

  json dropped = good;
  dropped["orbits"].erase(dropped["orbits"].size() - 1);
  EXPECT_FALSE(orbit_set_from_json(ctx, 2, dropped));

  json wrong_rep = good;
  wrong_rep["orbits"][0]["rep"] = {0, 1};
  EXPECT_FALSE(orbit_set_from_json(ctx, 2, wrong_rep));

  TempDir dir;
  {
    std::ofstream out(orbit_cache_path(dir.path(), ctx, 2));
    out << "garbage";
  }
  EXPECT_FALSE(load_orbit_cache(dir.path(), ctx, 2));
}

TEST(Io, PipelineUsesCache) {
  TempDir dir;
  PipelineOptions opts;
  opts.cache_dir = dir.path();
  const Instance first = prepare_instance(2, 6, 3, 4, opts);
  EXPECT_FALSE(first.orbits_from_cache);
  const Instance second = prepare_instance(2, 6, 3, 4, opts);
  EXPECT_TRUE(second.orbits_from_cache);
  EXPECT_EQ(run_algorithm1(second, opts).M, 63u);
}

TEST(Io, CacheDirectoryFromEnvironment) {
  ::setenv("GRASSCLIQUE_CACHE", "/tmp/from-env", 1);
  EXPECT_EQ(resolve_cache_dir("/fallback"), fs::path("/tmp/from-env"));
  ::unsetenv("GRASSCLIQUE_CACHE");
  EXPECT_EQ(resolve_cache_dir("/fallback"), fs::path("/fallback"));
}

TEST(Io, GraphJson) {
  const Instance inst = prepare_instance(2, 6, 2, 4);
  const json j = graph_to_json(inst.graph, *inst.orbits);
  ASSERT_EQ(j["vertices"].size(), inst.graph.size());
  EXPECT_EQ(j["edges"].size(), inst.graph.edge_count());
  EXPECT_EQ(j["vertices"][0]["weight"], inst.graph.weights[0]);
}
