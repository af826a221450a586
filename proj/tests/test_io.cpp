#include <gtest/gtest.h>

#include "covrp/gen.hpp"
#include "covrp/io.hpp"
#include "helpers.hpp"

using covrp::Instance;
using covrp::ParseError;
using covrp::ValidationError;
namespace io = covrp::io;

namespace {

void expect_same_instance(const Instance& a, const Instance& b) {
    EXPECT_EQ(a.name, b.name);
    EXPECT_EQ(a.n_customers, b.n_customers);
    EXPECT_EQ(a.capacity, b.capacity);
    EXPECT_EQ(a.time_limit, b.time_limit);
    EXPECT_EQ(a.fleet_size, b.fleet_size);
    EXPECT_EQ(a.unload_time, b.unload_time);
    EXPECT_EQ(a.demand, b.demand);
    EXPECT_EQ(a.service_time, b.service_time);
    EXPECT_EQ(a.travel_time, b.travel_time);
    EXPECT_EQ(a.distance, b.distance);
}

const char* kTinyDoc = R"({
  "name": "tiny1",
  "n_customers": 1,
  "capacity": 10,
  "time_limit": 13,
  "fleet_size": 1,
  "unload_time": 1,
  "demand": [3],
  "service_time": [2],
  "travel_time": [[0, 5], [5, 0]],
  "distance": [[0, 5], [5, 0]]
})";

}  // namespace

TEST(InstanceIo, ParsesTinyDocument) {
    const auto inst = io::parse_instance(kTinyDoc);
    expect_same_instance(inst, testutil::tiny1());
}

TEST(InstanceIo, WriteIsCanonicalBytes) {
    // Golden bytes pin the schema: key order, depot-stripped arrays,
    // one matrix row per line.
    const std::string expected =
        "{\n"
        "  \"name\": \"tiny1\",\n"
        "  \"n_customers\": 1,\n"
        "  \"capacity\": 10,\n"
        "  \"time_limit\": 13,\n"
        "  \"fleet_size\": 1,\n"
        "  \"unload_time\": 1,\n"
        "  \"demand\": [3],\n"
        "  \"service_time\": [2],\n"
        "  \"travel_time\": [\n"
        "    [0, 5],\n"
        "    [5, 0]\n"
        "  ],\n"
        "  \"distance\": [\n"
        "    [0, 5],\n"
        "    [5, 0]\n"
        "  ]\n"
        "}\n";
    EXPECT_EQ(io::write_instance(testutil::tiny1()), expected);
}

TEST(InstanceIo, RoundTripsGeneratedInstances) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        covrp::gen::GenConfig cfg;
        cfg.n = static_cast<int>(testutil::rand_range(rng, 1, 12));
        cfg.seed = rng();
        cfg.profile = static_cast<covrp::gen::Profile>(testutil::rand_range(rng, 0, 2));
        const auto inst = covrp::gen::generate(cfg);
        const auto bytes = io::write_instance(inst);
        const auto back = io::parse_instance(bytes);
        expect_same_instance(inst, back);
        EXPECT_EQ(io::write_instance(back), bytes);  // write∘parse is identity on bytes
    }
}

TEST(InstanceIo, RejectsMalformedDocuments) {
    EXPECT_THROW(io::parse_instance("not json"), ParseError);
    EXPECT_THROW(io::parse_instance("[1,2,3]"), ParseError);

    // Each mutation drops or breaks exactly one required field.
    auto mutate = [&](const std::string& from, const std::string& to) {
        std::string doc = kTinyDoc;
        const auto pos = doc.find(from);
        ASSERT_NE(pos, std::string::npos);
        doc.replace(pos, from.size(), to);
        EXPECT_ANY_THROW(io::parse_instance(doc));
    };
    mutate("\"capacity\"", "\"volume\"");                  // missing field
    mutate("\"n_customers\": 1", "\"n_customers\": \"1\"");  // wrong type
    mutate("\"demand\": [3]", "\"demand\": [3, 4]");         // wrong length
    mutate("\"distance\": [[0, 5], [5, 0]]", "\"distance\": [[0, 5]]");  // ragged matrix
}

TEST(InstanceIo, RejectsInvalidInstances) {
    std::string doc = kTinyDoc;
    const auto pos = doc.find("\"time_limit\": 13");
    doc.replace(pos, 16, "\"time_limit\": 12");
    try {
        io::parse_instance(doc);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("singleton route infeasible"), std::string::npos);
    }
}

TEST(FrontIo, EmptyFront) {
    covrp::ParetoFront front;
    const auto json = io::write_front_json(front, "x", "econ");
    const auto doc = io::parse_front(json);
    EXPECT_TRUE(doc.points.empty());
    EXPECT_EQ(doc.instance, "x");
    EXPECT_EQ(doc.method, "econ");
    EXPECT_EQ(io::write_front_csv(front), "f1,f2\n");
}

TEST(FrontIo, SinglePointCsv) {
    covrp::ParetoFront front;
    covrp::FrontPoint p;
    p.f1 = 10;
    p.f2 = 0;
    p.witness = covrp::evaluate(testutil::tiny1(), {{1}});
    front.points.push_back(p);
    EXPECT_EQ(io::write_front_csv(front), "f1,f2\n10,0\n");
}

TEST(FrontIo, GoldenJsonBytes) {
    io::FrontDocument doc;
    doc.instance = "demo";
    doc.method = "econ";
    doc.points.push_back({6, 9, {{1, 2}}});
    doc.points.push_back({8, 0, {{1}, {2}}});
    const std::string expected =
        "{\n"
        "  \"instance\": \"demo\",\n"
        "  \"method\": \"econ\",\n"
        "  \"points\": [\n"
        "    {\"f1\": 6, \"f2\": 9, \"routes\": [[1, 2]]},\n"
        "    {\"f1\": 8, \"f2\": 0, \"routes\": [[1], [2]]}\n"
        "  ]\n"
        "}\n";
    EXPECT_EQ(io::write_front_json(doc), expected);
}

TEST(FrontIo, RoundTripsWithAbortedFlag) {
    io::FrontDocument doc;
    doc.instance = "demo";
    doc.method = "wsum";
    doc.aborted = true;
    doc.points.push_back({10, 4, {{2, 1}, {3}}});
    const auto bytes = io::write_front_json(doc);
    EXPECT_NE(bytes.find("\"aborted\": true"), std::string::npos);
    const auto back = io::parse_front(bytes);
    EXPECT_TRUE(back.aborted);
    ASSERT_EQ(back.points.size(), 1u);
    EXPECT_EQ(back.points[0].f1, 10);
    EXPECT_EQ(back.points[0].f2, 4);
    EXPECT_EQ(back.points[0].routes, (std::vector<std::vector<int>>{{2, 1}, {3}}));

    io::FrontDocument clean = doc;
    clean.aborted = false;
    EXPECT_EQ(io::parse_front(io::write_front_json(clean)).aborted, false);
}

TEST(FrontIo, RejectsMalformedFronts) {
    EXPECT_THROW(io::parse_front("{}"), ParseError);
    EXPECT_THROW(io::parse_front(R"({"instance": "x", "method": "m", "points": 3})"),
                 ParseError);
    EXPECT_THROW(
        io::parse_front(R"({"instance": "x", "method": "m", "points": [{"f1": 1}]})"),
        ParseError);
}
