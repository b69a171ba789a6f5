#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "awkernel/graph.hpp"
#include "awkernel/synthgen.hpp"
#include "awkernel/tudataset.hpp"

using namespace awkernel;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("awkernel_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

// Two graphs: a triangle (nodes 1..3, label -1) and an edge (nodes 4..5,
// label 1). Node labels from {3, 7}. Edges stored in both directions plus a
// duplicate line to exercise dedup.
fs::path make_fixture() {
    fs::path dir = temp_dir("tu_fixture");
    write_file(dir / "FIX_A.txt",
               "1, 2\n2, 1\n2, 3\n3, 2\n1, 3\n3, 1\n1, 2\n4, 5\n5, 4\n");
    write_file(dir / "FIX_graph_indicator.txt", "1\n1\n1\n2\n2\n");
    write_file(dir / "FIX_graph_labels.txt", "-1\n1\n");
    write_file(dir / "FIX_node_labels.txt", "3\n7\n3\n7\n7\n");
    return dir;
}

}  // namespace

TEST_CASE("validate reports self-loops, dangling endpoints, ragged attributes") {
    Graph g;
    g.node_count = 5;
    g.edges = {{3, 3}, {0, 1}, {2, 10}};
    g.attributes = Eigen::MatrixXd::Zero(4, 2);  // wrong row count
    g.finalize();
    auto issues = validate(g);
    REQUIRE(issues.size() == 3);
    std::string joined;
    for (const auto& s : issues) joined += s + "; ";
    CHECK(joined.find("self-loop") != std::string::npos);
    CHECK(joined.find("dangling endpoint 10") != std::string::npos);
    CHECK(joined.find("attribute row count") != std::string::npos);

    Graph ok = make_graph(3, {{0, 1}, {1, 2}}, 2);
    CHECK(validate(ok).empty());
}

TEST_CASE("degree_attributes one-hot widths and clamping") {
    Graph cycle = gen_basic(Family::cycle, 5);
    Graph with_deg = degree_attributes(cycle, 4);
    REQUIRE(with_deg.attr_dim() == 5);
    for (int u = 0; u < 5; ++u) {
        CHECK(with_deg.attributes(u, 2) == 1.0);
        CHECK(with_deg.attributes.row(u).sum() == 1.0);
    }

    Graph wheel = gen_basic(Family::wheel, 6);  // hub degree 5
    Graph clamped = degree_attributes(wheel, 3);
    CHECK(clamped.attributes(0, 3) == 1.0);  // 5 clamps into last bucket

    Graph lonely = make_graph(1, {});
    Graph iso = degree_attributes(lonely, 4);
    CHECK(iso.attributes(0, 0) == 1.0);
}

TEST_CASE("load_tu_dataset parses, dedups and remaps") {
    fs::path dir = make_fixture();
    GraphCollection coll = load_tu_dataset(dir, "FIX");
    REQUIRE(coll.size() == 2);
    CHECK(coll.class_count == 2);
    CHECK(coll.attribute_kind == AttributeKind::categorical_one_hot);

    const Graph& tri = coll.graphs[0];
    CHECK(tri.node_count == 3);
    CHECK(tri.edge_count() == 3);  // duplicates and reverse directions collapsed
    CHECK(tri.label == 0);         // -1 remapped below 1
    REQUIRE(tri.attr_dim() == 2);  // two distinct node label values
    CHECK(tri.attributes(0, 0) == 1.0);  // value 3 -> slot 0
    CHECK(tri.attributes(1, 1) == 1.0);  // value 7 -> slot 1

    const Graph& edge = coll.graphs[1];
    CHECK(edge.node_count == 2);
    CHECK(edge.edge_count() == 1);
    CHECK(edge.label == 1);

    // load -> validate invariant
    CHECK(validate(coll).empty());
}

TEST_CASE("load_tu_dataset error paths") {
    fs::path dir = make_fixture();
    fs::remove(dir / "FIX_A.txt");
    CHECK_THROWS_AS(load_tu_dataset(dir, "FIX"), LoadError);

    dir = make_fixture();
    write_file(dir / "FIX_A.txt", "1, 4\n");  // crosses graph boundary
    CHECK_THROWS_AS(load_tu_dataset(dir, "FIX"), FormatError);

    dir = make_fixture();
    write_file(dir / "FIX_A.txt", "1, 99\n");  // endpoint outside node range
    CHECK_THROWS_AS(load_tu_dataset(dir, "FIX"), FormatError);
}

TEST_CASE("TUDataset round trip is exact") {
    fs::path dir = make_fixture();
    GraphCollection coll = load_tu_dataset(dir, "FIX");

    fs::path out1 = temp_dir("tu_roundtrip1");
    save_tu_dataset(coll, out1, "FIX");
    GraphCollection reloaded = load_tu_dataset(out1, "FIX");

    REQUIRE(reloaded.size() == coll.size());
    CHECK(reloaded.class_count == coll.class_count);
    CHECK(reloaded.attribute_kind == coll.attribute_kind);
    for (std::size_t i = 0; i < coll.size(); ++i) {
        CHECK(reloaded.graphs[i].edges == coll.graphs[i].edges);
        CHECK(reloaded.graphs[i].label == coll.graphs[i].label);
        CHECK(reloaded.graphs[i].attributes == coll.graphs[i].attributes);
    }

    // second write must be byte-identical
    fs::path out2 = temp_dir("tu_roundtrip2");
    save_tu_dataset(reloaded, out2, "FIX");
    for (const char* suffix :
         {"_A.txt", "_graph_indicator.txt", "_graph_labels.txt", "_node_labels.txt"}) {
        std::ifstream a(out1 / ("FIX" + std::string(suffix)));
        std::ifstream b(out2 / ("FIX" + std::string(suffix)));
        std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
        std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
        CHECK(sa == sb);
    }
}

TEST_CASE("continuous attributes round trip within 1e-12") {
    GraphCollection coll;
    coll.name = "CONT";
    coll.class_count = 1;
    coll.attribute_kind = AttributeKind::continuous;
    Graph g = make_graph(3, {{0, 1}, {1, 2}});
    g.attributes = Eigen::MatrixXd::Random(3, 4);
    g.label = 0;
    coll.graphs.push_back(g);

    fs::path dir = temp_dir("tu_cont");
    save_tu_dataset(coll, dir, "CONT");
    GraphCollection reloaded = load_tu_dataset(dir, "CONT");
    REQUIRE(reloaded.attribute_kind == AttributeKind::continuous);
    CHECK((reloaded.graphs[0].attributes - g.attributes).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("with_degree_attributes uses observed max degree") {
    GraphCollection coll;
    coll.class_count = 2;
    coll.graphs.push_back(gen_basic(Family::cycle, 5));
    coll.graphs.push_back(gen_basic(Family::wheel, 7));  // hub degree 6
    coll.graphs[0].label = 0;
    coll.graphs[1].label = 1;
    GraphCollection deg = with_degree_attributes(coll);
    CHECK(deg.attr_dim() == 7);
    CHECK(deg.attribute_kind == AttributeKind::categorical_one_hot);
    CHECK(deg.graphs[1].attributes(0, 6) == 1.0);
}
