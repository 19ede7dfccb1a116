#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "wt1/cli.hpp"

using namespace wt1;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("wt1_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("utility commands") {
  CHECK(run({"sturm", "124"}).out == "index 192 bound 16\n");
  CHECK(run({"sturm", "23"}).out == "index 24 bound 2\n");
  CHECK(run({"discs", "23"}).out == "-23\n");
  CHECK(run({"discs", "12"}).out == "-3 -4 8 -8 12 24 -24\n");
  CHECK(run({"discs", "1"}).out == "\n");
}

TEST_CASE("usage and file errors") {
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"sturm", "--bogus", "3"}).code == cli::kUsage);
  CHECK(run({"sturm", "0"}).code == cli::kUsage);
  CHECK(run({"classify", "/nonexistent/file.wt1"}).code == cli::kFileError);
  CHECK(run({"batch", "/nonexistent/dir"}).code == cli::kFileError);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"classify", "-"}, "level x\n").code == cli::kError);
}

TEST_CASE("gen-dihedral and classify") {
  const Result gen = run({"gen-dihedral", "-23", "1", "--char", "1", "--terms", "10"});
  REQUIRE(gen.code == 0);
  CHECK(gen.out == serialize(testing_support::level23_record(10)));
  const Result cls = run({"classify", "-"}, gen.out);
  CHECK(cls.code == cli::kDefinitive);
  const Certificate c = parse_certificate(cls.out);
  CHECK(c.verdict == Verdict::Dihedral);
  CHECK(c.dihedral->D == -23);

  const Result list = run({"gen-dihedral", "-47", "1", "--list"});
  CHECK(list.code == 0);
  CHECK(std::count(list.out.begin(), list.out.end(), '\n') == 4);
  CHECK(run({"gen-dihedral", "-47", "1", "--char", "5"}).code == cli::kUsage);
  CHECK(run({"gen-dihedral", "-4", "5"}).code == cli::kError);
  CHECK(run({"gen-dihedral", "-12", "1"}).code == cli::kError);
  // default length is the Sturm bound
  CHECK(parse_record(run({"gen-dihedral", "-23", "1"}).out).precision() == 2);
}

TEST_CASE("validate") {
  const std::string text = serialize(testing_support::level23_record(40));
  CHECK(run({"validate", "-"}, text).code == 0);
  NewformRecord bad = testing_support::level23_record(40);
  bad.coeffs[5] = CycNumber(2).embed(bad.cyc_order);
  const Result r = run({"validate", "-"}, serialize(bad));
  CHECK(r.code == cli::kError);
  CHECK(r.out.find("violation n=6") != std::string::npos);
}

TEST_CASE("classify writes the certificate to a file") {
  const fs::path dir = scratch("output");
  const std::string out = (dir / "a4.cert").string();
  const Result r = run({"classify", testing_support::fixture("level124_a4.wt1"), "-o", out});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(parse_certificate(testing_support::read_file(out)).verdict == Verdict::A4);
  const Result tight = run({"classify", testing_support::fixture("level124_a4.wt1"), "--prime-budget", "2"});
  CHECK(tight.code == cli::kInconclusive);
  fs::remove_all(dir);
}

TEST_CASE("batch summary and severity") {
  const fs::path dir = scratch("batch");
  for (const char* name : {"level124_a4.wt1", "level148_s4.wt1"}) {
    fs::copy_file(testing_support::fixture(name), dir / name);
  }
  {
    std::ofstream(dir / "broken.wt1") << "level 5\n";
    std::ofstream(dir / "ignored.txt") << "not a record\n";
  }
  const Result r = run({"batch", dir.string(), "--jobs", "3"});
  CHECK(r.code == cli::kError);
  // header plus one row per .wt1 file
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
  CHECK(r.out.find("broken.wt1") != std::string::npos);
  CHECK(r.err.find("broken.wt1: error") != std::string::npos);
  CHECK(fs::exists(dir / "level124_a4.wt1.cert"));
  CHECK_FALSE(fs::exists(dir / "broken.wt1.cert"));
  fs::remove(dir / "broken.wt1");
  CHECK(run({"batch", dir.string()}).code == 0);
  CHECK(run({"batch", dir.string(), "--prime-budget", "2"}).code == cli::kInconclusive);
  fs::remove_all(dir);
}
