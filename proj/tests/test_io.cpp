#include "doctest.h"
#include "splab/io.hpp"
#include "subprocess.hpp"

#include <cstdio>
#include <fstream>

using namespace splab;
namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("csv round trip preserves values and formatting contract") {
    const fs::path dir = testutil::fresh_dir("io_csv");
    const fs::path f = dir / "pot.csv";
    write_csv(f, {"x", "u"},
              {{-1.0, 0.25}, {-0.5, -1.0 / 3.0}, {0.0, 1e-300}, {0.5, 0.0}, {1.0, 2.0}});
    const std::string text = testutil::slurp(f);
    CHECK(text.substr(0, 4) == "x,u\n");
    CHECK(text.find("\r") == std::string::npos);              // LF endings
    CHECK(text.find("E") == std::string::npos);               // lowercase exponent
    CHECK(text.find("-3.3333333333333331e-01") != std::string::npos);  // 17 sig digits
    CHECK(!fs::exists(f.string() + ".tmp"));                  // atomic write cleanup

    Grid g = read_potential_csv(f);
    REQUIRE(g.n == 5);
    CHECK(g.x_min == -1.0);
    CHECK(g.x_max == 1.0);
    CHECK(g.values[1] == -1.0 / 3.0);  // bit-exact through the 17-digit format
    CHECK(g.values[2] == 1e-300);
    CHECK(g.values[4] == 2.0);
}

TEST_CASE("potential reader validates structure") {
    const fs::path dir = testutil::fresh_dir("io_val");
    const fs::path f = dir / "p.csv";

    write_text(f, "x,potential\n0,1\n1,2\n");
    CHECK_THROWS_AS(read_potential_csv(f), std::invalid_argument);  // header

    write_text(f, "x,u\n0,1\n1,2\n1.7,3\n");
    CHECK_THROWS_AS(read_potential_csv(f), std::invalid_argument);  // non-uniform

    write_text(f, "x,u\n1,1\n0,2\n");
    CHECK_THROWS_AS(read_potential_csv(f), std::invalid_argument);  // decreasing

    write_text(f, "x,u\n0,1\n1,nan\n");
    CHECK_THROWS_AS(read_potential_csv(f), std::invalid_argument);  // non-finite

    write_text(f, "x,u\n0,1\n1\n");
    CHECK_THROWS_AS(read_potential_csv(f), std::invalid_argument);  // ragged row

    write_text(f, "x,u\n0,1\n");
    CHECK_THROWS_AS(read_potential_csv(f), std::invalid_argument);  // single row

    write_text(f, "x,u\n0,1\nbogus,2\n");
    CHECK_THROWS_AS(read_potential_csv(f), std::invalid_argument);  // non-numeric

    CHECK_THROWS_AS(read_potential_csv(dir / "missing.csv"), std::runtime_error);

    // CRLF input and blank lines are tolerated
    write_text(f, "x,u\r\n0,1\r\n\r\n1,2\r\n");
    Grid g = read_potential_csv(f);
    CHECK(g.n == 2);
    CHECK(g.values[1] == 2.0);
}

TEST_CASE("csv writer validates shape") {
    const fs::path dir = testutil::fresh_dir("io_shape");
    CHECK_THROWS_AS(write_csv(dir / "bad.csv", {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(write_csv(dir / "bad.csv", {"x", "u"}, {{1.0}}), std::invalid_argument);
}

TEST_CASE("manifest serialization: sorted keys, stable bytes, full payload") {
    RunManifest m;
    m.command = "family";
    m.put("p", 2.0);
    m.put("grid_n", std::size_t(4001));
    m.put("flag", true);
    m.put("branch", "xi1");
    m.put("deltas", std::vector<double>{0.5, 0.25});
    m.add_output("/tmp/out.csv");
    m.wall_time_ms = 12.5;

    const std::string j = m.to_json();
    CHECK(j.back() == '\n');
    CHECK(j.find("\"command\"") != std::string::npos);
    CHECK(j.find("\"tool_version\"") != std::string::npos);
    CHECK(j.find("\"0.1.0\"") != std::string::npos);
    CHECK(j.find("\"wall_time_ms\"") != std::string::npos);
    CHECK(j.find("out.csv") != std::string::npos);
    // parameters keys emerge sorted
    const auto pos_branch = j.find("\"branch\"");
    const auto pos_deltas = j.find("\"deltas\"");
    const auto pos_flag = j.find("\"flag\"");
    const auto pos_grid = j.find("\"grid_n\"");
    REQUIRE(pos_branch != std::string::npos);
    CHECK(pos_branch < pos_deltas);
    CHECK(pos_deltas < pos_flag);
    CHECK(pos_flag < pos_grid);

    // identical content -> identical bytes (wall time aside, it is a field)
    RunManifest m2 = m;
    CHECK(m2.to_json() == j);
    m2.wall_time_ms = 99.0;
    CHECK(testutil::drop_lines_containing(m2.to_json(), "wall_time_ms") ==
          testutil::drop_lines_containing(j, "wall_time_ms"));

    const fs::path dir = testutil::fresh_dir("io_manifest");
    m.write(dir / "run.json");
    CHECK(testutil::slurp(dir / "run.json") == j);
}
