#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <fstream>

#include "zp/cli.hpp"
#include "zp/ratmat.hpp"

using nlohmann::json;
using zp::cli::dispatch;
using zp::cli::Status;

namespace {

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = std::string(P_tmpdir) + "/zph_test_" + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST_CASE("elemdiv command") {
  const auto r = dispatch({"elemdiv", "0,-1;6,0"});
  REQUIRE(r.status == Status::Ok);
  CHECK(r.exit_code == 0);
  const auto j = json::parse(r.payload);
  CHECK(j["a"] == json::array({1}));
  CHECK(j["b"] == json::array({6}));
  CHECK(j["checked"] == true);
  CHECK(j["nu"] == 6);
  for (const char* key : {"kappa", "lambda"}) {
    const auto text = j[key].get<std::string>();
    CHECK(zp::RatMatrix::parse(text).to_string() == text);
  }
}

TEST_CASE("finquot commands") {
  CHECK(json::parse(dispatch({"finquot", "order", "2", "2"}).payload)["order"] == 720);
  const auto s = json::parse(dispatch({"finquot", "surjective", "1", "6"}).payload);
  CHECK(s["surjective"] == true);
  CHECK(s["closure_size"] == 144);
  CHECK(json::parse(dispatch({"finquot", "gamma-index", "1,0,0,0;0,1,0,0;0,0,2,0;0,0,0,2"}).payload)["index"] == 15);
  const auto gens = temp_file("gens.txt", "# S squared and T\n-1,0;0,-1\n\n1,1;0,1\n");
  const auto img = json::parse(dispatch({"finquot", "image-index", "1", "5", "--gens", gens}).payload);
  CHECK(img["subgroup_order"] == 10);
  CHECK(img["index"] == 12);
  std::remove(gens.c_str());
}

TEST_CASE("hecke-index command") {
  const auto j = json::parse(dispatch({"hecke-index", "1,0;0,2", "--reps"}).payload);
  CHECK(j["index"] == 3);
  CHECK(j["reps"].size() == 3);
  const auto capped = dispatch({"hecke-index", "1,0,0,0;0,1,0,0;0,0,2,0;0,0,0,2", "--cap", "5"});
  CHECK(capped.exit_code == 1);
  CHECK(capped.code == "ORBIT_BUDGET_EXCEEDED");
}

TEST_CASE("complexity command") {
  const auto j = json::parse(dispatch({"complexity", "1/2,0;0,2"}).payload);
  CHECK(j["N"] == 4);
  CHECK(j["N_min"] == 4);
}

TEST_CASE("expander-scan command") {
  const auto r = dispatch({"expander-scan", "--g", "1", "--b", "3", "--qmax", "8"});
  REQUIRE(r.status == Status::Ok);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < r.payload.size()) {
    const auto end = r.payload.find('\n', start);
    lines.push_back(r.payload.substr(start, end - start));
    start = end + 1;
  }
  REQUIRE(lines.size() == 7);
  CHECK(lines[0] == "q,n,gap,sweep,excluded_reason");
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK(std::stoul(lines[i]) == std::vector<unsigned>{2, 3, 4, 5, 6, 7}[i - 1]);
  const auto j = json::parse(dispatch({"--format", "json", "expander-scan", "--qmax", "5"}).payload);
  CHECK(j.size() == 3);
}

TEST_CASE("reduce-tau and height-scan commands") {
  const auto j = json::parse(dispatch({"reduce-tau", "--re", "0", "--im", "0.5"}).payload);
  CHECK(j["m"] == "0,-1;1,0");
  CHECK(j["im"].get<double>() == doctest::Approx(2.0));
  const auto fam = temp_file("family.txt", "1,0;0,1\n1,0;0,2\n1,0;0,3\n");
  const auto r = dispatch({"height-scan", "--family", fam});
  CHECK(r.payload == "n,N,H,ratio\n1,1,1,1\n2,2,2,1\n3,3,3,1\n");
  std::remove(fam.c_str());
}

TEST_CASE("error reporting") {
  const auto usage = dispatch({"no-such-command"});
  CHECK(usage.exit_code == 2);
  CHECK(usage.status == Status::Error);
  CHECK_FALSE(usage.diagnostics.empty());
  CHECK(dispatch({}).exit_code == 2);
  CHECK(dispatch({"finquot", "order", "2"}).exit_code == 2);

  const auto bad = dispatch({"elemdiv", "1,2,3,4;0,1,0,0;0,0,1,0;0,0,0,1"});
  CHECK(bad.exit_code == 1);
  CHECK(bad.code == "NOT_SIMILITUDE");
  CHECK(dispatch({"elemdiv", "1,2;3"}).code == "PARSE_ERROR");
  CHECK(dispatch({"finquot", "gamma-index", "2,0;0,4"}).code == "NOT_PRIMITIVE");

  const auto help = dispatch({"--help"});
  CHECK(help.exit_code == 0);
  CHECK(help.payload.find("expander-scan") != std::string::npos);
}

TEST_CASE("output is deterministic") {
  for (const auto& args : std::vector<std::vector<std::string>>{{"elemdiv", "2,0,0,0;0,1,0,0;0,0,3,0;0,0,0,6"},
                                                                 {"hecke-index", "1,0;0,6", "--reps"},
                                                                 {"--threads", "2", "hecke-index", "1,0;0,6", "--reps"},
                                                                 {"expander-scan", "--qmax", "7"}}) {
    CHECK(dispatch(args).payload == dispatch(args).payload);
  }
  CHECK(dispatch({"--threads", "2", "hecke-index", "1,0;0,6", "--reps"}).payload ==
        dispatch({"hecke-index", "1,0;0,6", "--reps"}).payload);
}
