#include "framespec/errors.hpp"
#include "framespec/frame_io.hpp"
#include "framespec/reference_frames.hpp"
#include "framespec/symmetry_io.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

using namespace framespec;

namespace {

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kFixtures = FIXTURE_DIR;

}  // namespace

TEST(FrameIo, RoundTripPreservesFrame) {
  for (const Frame& f : {planar_star(), antenna_tower()}) {
    Frame g = frame_from_json(frame_to_json(f));
    ASSERT_EQ(g.vertices.size(), f.vertices.size());
    ASSERT_EQ(g.edges.size(), f.edges.size());
    for (std::size_t v = 0; v < f.vertices.size(); ++v) {
      EXPECT_EQ(g.vertices[v].id, f.vertices[v].id);
      EXPECT_LT((g.vertices[v].pos - f.vertices[v].pos).norm(), 1e-15);
      EXPECT_EQ(g.vertices[v].joint.type, f.vertices[v].joint.type);
    }
    for (std::size_t e = 0; e < f.edges.size(); ++e) {
      EXPECT_EQ(g.edges[e].id, f.edges[e].id);
      EXPECT_EQ(g.edges[e].origin, f.edges[e].origin);
      EXPECT_LT((g.edges[e].j - f.edges[e].j).norm(), 1e-15);
      EXPECT_NEAR(g.edges[e].length, f.edges[e].length, 1e-15);
    }
  }
}

TEST(FrameIo, FixturesLoadAndValidate) {
  for (const char* name : {"planar_star.json", "antenna_tower.json"}) {
    Frame f = load_frame(kFixtures + "/" + name);
    EXPECT_TRUE(validate_frame(f).ok()) << name;
  }
}

TEST(FrameIo, SchemaVersionIsWritten) {
  auto j = nlohmann::json::parse(frame_to_json(planar_star()));
  EXPECT_EQ(j.at("schema_version").get<int>(), kSchemaVersion);
}

TEST(FrameIo, MalformedJsonReportsPosition) {
  try {
    frame_from_json("{\n  \"vertices\": [\n  ,]\n}");
    FAIL() << "no exception";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line"), std::string::npos) << e.what();
  }
}

TEST(FrameIo, UnknownKeyIsAParseError) {
  auto j = nlohmann::json::parse(frame_to_json(planar_star()));
  j["vertices"][0]["colour"] = "red";
  EXPECT_THROW(frame_from_json(j.dump()), ParseError);
}

TEST(FrameIo, MissingKeyIsAParseError) {
  auto j = nlohmann::json::parse(frame_to_json(planar_star()));
  j["edges"][0].erase("to");
  EXPECT_THROW(frame_from_json(j.dump()), ParseError);
}

TEST(FrameIo, UnknownVertexIsADomainError) {
  auto j = nlohmann::json::parse(frame_to_json(planar_star()));
  j["edges"][0]["to"] = "nowhere";
  EXPECT_THROW(frame_from_json(j.dump()), DomainError);
}

TEST(FrameIo, JointNames) {
  EXPECT_EQ(joint_from_name("clamped").type, JointType::Clamped);
  EXPECT_EQ(joint_from_name("spring", 0.1, 0.2).type, JointType::Spring);
  EXPECT_THROW(joint_from_name("welded"), ParseError);
}

TEST(SymmetryIo, FixtureGivesOrderSixGroup) {
  Frame f = load_frame(kFixtures + "/antenna_tower.json");
  auto d = load_symmetry(f, kFixtures + "/antenna_tower.symmetry.json");
  EXPECT_EQ(d.generators.size(), 2u);
  auto s = FrameSymmetry::generate(f, d.generators, d.options);
  EXPECT_EQ(s.order(), 6);
  EXPECT_TRUE(s.has_reflections());
}

TEST(SymmetryIo, RoundTrip) {
  Frame f = antenna_tower();
  SymmetryDescription d{antenna_generators(), {}};
  auto e = symmetry_from_json(f, symmetry_to_json(f, d));
  ASSERT_EQ(e.generators.size(), d.generators.size());
  for (std::size_t g = 0; g < d.generators.size(); ++g) {
    EXPECT_LT((e.generators[g].T - d.generators[g].T).norm(), 1e-15);
    EXPECT_EQ(e.generators[g].edge_perm, d.generators[g].edge_perm);
  }
}

TEST(SymmetryIo, UnknownEdgeIsRejected) {
  Frame f = antenna_tower();
  const std::string text =
      R"({"schema_version":1,"generators":[{"name":"R","matrix":[[1,0,0],[0,1,0],[0,0,1]],"edge_perm":{"zz":"e1"}}]})";
  EXPECT_ANY_THROW(symmetry_from_json(f, text));
}
