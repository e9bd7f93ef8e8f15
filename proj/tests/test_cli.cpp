#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bisector_lab/cli.hpp"
#include "bisector_lab/io.hpp"
#include "oracles.hpp"

using namespace bisector_lab;

namespace {

const std::string kFixtures = BISECTOR_LAB_FIXTURES;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("bisector_lab_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("counts on the two-point fixture") {
  const auto r = cli({"counts", "--p", "7", "--input", fixture("two_points.txt")});
  REQUIRE(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  CHECK(j["delta_size"] == 2);
  CHECK(j["t_count"] == 2);
  CHECK(j["q_count"] == 4);
  CHECK(j["rect_count"] == 0);
  CHECK(j["para_count"] == 2);
  CHECK(j["second_moment"] == 8);
}

TEST_CASE("counts on an empty file") {
  const auto r = cli({"counts", "--p", "7", "--input", temp_file("empty.txt", "# nothing\n\n")});
  REQUIRE(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  CHECK(j["n"] == 0);
  CHECK(j["delta_size"] == 0);
  CHECK(j["t_count"] == 0);
  CHECK(j["q_count"] == 0);
  CHECK(j["second_moment"] == 0);
}

TEST_CASE("counts on a cartesian set match the oracles") {
  const auto r = cli({"counts", "--gen", "cartesian:7:3:0"});
  REQUIRE(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  std::vector<oracle::P2> pts;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) pts.push_back({x, y});
  CHECK(j["n"] == 9);
  CHECK(j["delta_size"] == oracle::delta(pts, 7).size());
  CHECK(j["second_moment"] == static_cast<std::uint64_t>(oracle::equal_distance_quadruples(pts, 7)));
  CHECK(j["t_count"] == static_cast<std::uint64_t>(oracle::isosceles(pts, 7)));
  CHECK(j["rect_count"] == static_cast<std::uint64_t>(oracle::rectangles(pts, 7)));
  CHECK(j["q_count"] == static_cast<std::uint64_t>(oracle::bisector_energy(pts, 7)));
  CHECK(j["para_count"] == static_cast<std::uint64_t>(oracle::paraboloid(pts, 7)));
}

TEST_CASE("counts on residue input") {
  const auto r = cli({"counts", "--p", "7", "--input", temp_file("res.txt", "0\n1\n")});
  REQUIRE(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  CHECK(j["kind"] == "residue");
  CHECK(j["e4"] == 18);
  CHECK(j["chi"] == static_cast<std::uint64_t>(oracle::chi_quadruples({0, 1}, 7)));
}

TEST_CASE("verify exit codes") {
  CHECK(cli({"verify", "--p", "7", "--input", fixture("unit_square.txt")}).code == kExitOk);
  CHECK(cli({"verify", "--p", "7", "--input", fixture("corrupted.txt")}).code == kExitInputError);
  CHECK(cli({"verify", "--p", "7", "--input", fixture("missing.txt")}).code == kExitInputError);
  CHECK(cli({"verify", "--p", "8", "--input", fixture("unit_square.txt")}).code == kExitInputError);
  CHECK(cli({"frobnicate"}).code == kExitInputError);
  const auto bad = cli({"verify", "--p", "7", "--input", fixture("corrupted.txt")});
  CHECK(bad.err.find("ParseError") != std::string::npos);
}

TEST_CASE("verify gates p = 1 mod 4") {
  const auto path = temp_file("p13.txt", "0 0\n1 5\n2 3\n");
  const auto r = cli({"verify", "--p", "13", "--input", path});
  REQUIRE(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  int skipped = 0;
  for (const auto& c : j["checks"])
    if (c["status"] == "SKIPPED") ++skipped;
  CHECK(skipped >= 4);
  CHECK(j["assert_failures"] == 0);
}

TEST_CASE("verify csv has a fixed header") {
  const auto r = cli({"verify", "--p", "7", "--input", fixture("two_points.txt"), "--format", "csv"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("name,mode,status,relation,lhs,rhs,ratio,context,note\n", 0) == 0);
  CHECK(r.out.find(",FAIL,") == std::string::npos);
}

TEST_CASE("verify on residue sets") {
  const auto r = cli({"verify", "--gen", "random_residue:101:12:3", "--format", "csv"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("w_profile_identity,ASSERT,PASS") != std::string::npos);
  CHECK(r.out.find("chi_sum,ASSERT,PASS") != std::string::npos);
}

TEST_CASE("exhaustive over F_3^2") {
  const auto r = cli({"exhaustive", "--p", "3", "--threads", "2"});
  REQUIRE(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  CHECK(j["subsets"] == 512);
  CHECK(cli({"exhaustive", "--p", "7"}).code == kExitInputError);
  const auto k = Json::parse(cli({"exhaustive", "--p", "5", "--k", "2"}).out);
  CHECK(k["subsets"] == 300);
}

TEST_CASE("sweep rows") {
  const auto r = cli({"sweep", "--gen", "random_plane:101:30:1", "--trials", "5", "--format", "csv"});
  REQUIRE(r.code == kExitOk);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "p,family,seed,n,delta,t,rect,q,para,ratio_hay,ratio_ben,ratio_thm1,log_delta_over_log_n");
  std::vector<std::string> rows;
  for (std::string line; std::getline(lines, line);) rows.push_back(line);
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].rfind("101,random_plane," + std::to_string(1 + i) + ",", 0) == 0);

  const auto circle = cli({"sweep", "--gen", "circle:103:0:0", "--format", "csv"});
  REQUIRE(circle.code == kExitOk);
  const auto last = circle.out.substr(circle.out.rfind(',') + 1);
  CHECK(last.size() > 1);
  CHECK(std::stod(last) > 0);
}

TEST_CASE("exponents command") {
  const auto r = cli({"exponents"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("424/779") != std::string::npos);
  CHECK(r.out.find("69/1558") != std::string::npos);
  CHECK(r.out.find("107/71") != std::string::npos);
  CHECK(r.out.find("1/71") != std::string::npos);
  CHECK(r.out.find("3/4") != std::string::npos);
  CHECK(r.out.find("12/19") != std::string::npos);
  const auto csv = cli({"exponents", "--format", "csv"});
  CHECK(csv.code == kExitOk);
}

TEST_CASE("output is identical across thread counts") {
  for (const std::vector<std::string>& base :
       {std::vector<std::string>{"sweep", "--gen", "random_plane:1009:200:4", "--trials", "4", "--format", "csv"},
        std::vector<std::string>{"sweep", "--gen", "random_residue:1009:40:4", "--trials", "4"},
        std::vector<std::string>{"verify", "--gen", "circle:1019:0:0"},
        std::vector<std::string>{"exhaustive", "--p", "3", "--format", "csv"}}) {
    auto one = base, four = base;
    one.insert(one.end(), {"--threads", "1"});
    four.insert(four.end(), {"--threads", "4"});
    const auto a = cli(one), b = cli(four);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("out flag writes the report file") {
  const auto path = (std::filesystem::temp_directory_path() / "bisector_lab_test_report.json").string();
  std::filesystem::remove(path);
  const auto r = cli({"counts", "--p", "7", "--input", fixture("unit_square.txt"), "--out", path});
  REQUIRE(r.code == kExitOk);
  std::ifstream in(path);
  const auto j = Json::parse(in);
  CHECK(j["rect_count"] == 8);
  CHECK(j["para_count"] == 20);
}

TEST_CASE("set file parsing") {
  const auto m = make_modulus(7);
  std::istringstream pts("# header\n1 2\n\n3 4  # trailing\n1 2\n");
  const auto e = std::get<PlaneSet>(parse_set(pts, m));
  CHECK(e.size() == 2);
  std::istringstream res("5\n6\n");
  CHECK(std::get<ResidueSet>(parse_set(res, m)).size() == 2);
  std::istringstream mixed("5\n1 2\n");
  CHECK_THROWS_AS(parse_set(mixed, m), LabError);
  std::istringstream big("7 0\n");
  try {
    parse_set(big, m);
    FAIL("out-of-range coordinate accepted");
  } catch (const LabError& err) {
    CHECK(err.code() == ErrorCode::ModulusMismatch);
  }
  std::ostringstream out;
  write_set(out, e);
  std::istringstream back(out.str());
  const auto again = std::get<PlaneSet>(parse_set(back, m));
  CHECK(std::equal(again.points().begin(), again.points().end(), e.points().begin(), e.points().end()));
}

TEST_CASE("json helpers") {
  CHECK(json_count(Count(42)) == 42);
  CHECK(json_count(Count(1) << 60) == "1152921504606846976");
  CHECK(json_count((Count(1) << 53)) == 9007199254740992ull);
  CHECK(json_quantity(Quantity(Rational(1, 3))) == "1/3");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("plain") == "plain");
}
