#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ncg/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = ncg::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split_on(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t start = 0, pos;
  while ((pos = s.find(sep, start)) != std::string::npos) {
    out.push_back(trim(s.substr(start, pos - start)));
    start = pos + sep.size();
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

TEST_CASE("regression corpus under --verify --json") {
  std::ifstream in(NCG_CLI_CORPUS);
  REQUIRE(in.good());
  int cases = 0;
  for (std::string line; std::getline(in, line);) {
    if (trim(line).empty() || line[0] == '#') continue;
    auto fields = split_on(line, " | ");
    REQUIRE(fields.size() == 3);
    std::vector<std::string> args = {"--verify", "--json"};
    for (const auto& w : words(fields[1])) args.push_back(w);
    CAPTURE(line);
    Result r = run(args);
    CHECK(r.code == std::stoi(fields[0]));
    auto doc = nlohmann::ordered_json::parse(r.out);
    CHECK(doc["schema_version"] == ncg::cli::kSchemaVersion);
    CHECK(doc.dump(2) + "\n" == r.out);
    if (r.code == 0) {
      CHECK(doc.contains("result"));
    } else {
      CHECK(doc.contains("error"));
    }
    for (const auto& want : split_on(fields[2], " && ")) {
      CAPTURE(want);
      CHECK(r.out.find(want) != std::string::npos);
    }
    // Human output exits the same way.
    Result human = run(words(fields[1]));
    CHECK(human.code == r.code);
    CHECK((human.out.empty() || human.out[0] != '{'));
    ++cases;
  }
  CHECK(cases > 50);
}

TEST_CASE("flags work before and after the subcommand") {
  Result a = run({"--json", "cf", "sqrt", "7"});
  Result b = run({"cf", "sqrt", "7", "--json"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("human output") {
  Result r = run({"ktheory", "ck", "5,1,4,1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Z/4") != std::string::npos);
  r = run({"cf", "sqrt", "4"});
  CHECK(r.code == ncg::cli::kMalformedInput);
  CHECK(r.err.find("radicand is a perfect square") != std::string::npos);
  r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("qcurve-table") != std::string::npos);
}

TEST_CASE("negative matrix entries are positional") {
  Result r = run({"ktheory", "bundle", "-4,-4,-1,0"});
  CHECK(r.code == ncg::cli::kPrecondition);
  r = run({"similar", "1,-2,-1,3", "5,2,2,1"});
  CHECK(r.code == 0);
}
