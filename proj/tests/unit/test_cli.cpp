#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "d4/cli.hpp"

using json = nlohmann::json;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
  json j() const { return json::parse(out); }
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = d4::cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("chamber") {
  const Outcome o = call({"chamber", "--alpha", "3/10,1/5,1/5,1/5"});
  REQUIRE(o.code == 0);
  const json j = o.j();
  CHECK(j["subcommand"] == "chamber");
  CHECK(j["input"]["alpha"] == "3/10,1/5,1/5,1/5");
  CHECK(j["result"]["chamber"] == "B1_1");
  CHECK(j["diagnostics"]["exact"] == true);

  const Outcome wall = call({"chamber", "--alpha", "1/4,1/4,1/4,1/4"});
  CHECK(wall.code == 2);
  CHECK(wall.j()["error"]["kind"] == "OnWall");
}

TEST_CASE("periods and their inverse round-trip through JSON") {
  const Outcome p = call({"periods", "--alpha", "3/10,1/5,1/5,1/5", "--m", "0,0,0,0"});
  REQUIRE(p.code == 0);
  const json r = p.j()["result"];
  CHECK(r["basis"] == "B1_1");
  CHECK(r["x"] == json({"3/10", "1/10", "1/10", "1/10", "1/10"}));

  const Outcome inv = call({"invert", "--from-json", p.out});
  REQUIRE(inv.code == 0);
  CHECK(inv.j()["result"]["alpha"] == json({"3/10", "1/5", "1/5", "1/5"}));
  CHECK(inv.j()["result"]["m"] == json({"0", "0", "0", "0"}));
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::string> args{"periods", "--alpha", "2/5,1/10,1/10,1/10", "--m", "1/2+i,0,-i,3/4"};
  CHECK(call(args).out == call(args).out);
  const std::vector<std::string> hk{"hk", "check", "--trials", "50", "--seed", "3"};
  CHECK(call(hk).out == call(hk).out);
}

TEST_CASE("domain") {
  const Outcome o = call({"domain", "--x", "0,1,0,0,0", "--z", "0,0,0,0,0"});
  REQUIRE(o.code == 0);
  CHECK(o.j()["result"]["in_domain"] == false);
}

TEST_CASE("coxeter, homology and monodromy subcommands") {
  CHECK(call({"coxeter", "wfin"}).j()["result"]["order"] == 192);
  CHECK(call({"coxeter", "orbit", "--vertex", "1/2,1/2,0,0"}).j()["result"]["orbit"] == "12/34");
  const Outcome n = call({"monodromy", "canonical"});
  CHECK(n.code == 0);
  const Outcome m = call({"monodromy", "match", "--factors", "[[1,0],[-1,1]],[[1,1],[0,1]],[[1,0],[-1,1]]", "--i",
                          "1", "--j", "3"});
  REQUIRE(m.code == 0);
  CHECK(m.j()["result"]["match"] == true);
  CHECK(call({"homology", "minus2", "--kmax", "1"}).code == 0);
}

TEST_CASE("hk subcommands") {
  const Outcome c = call({"hk", "check", "--trials", "20"});
  REQUIRE(c.code == 0);
  CHECK(c.j()["result"]["pass"] == true);
  CHECK(c.j()["diagnostics"]["exact"] == false);
  CHECK(call({"hk", "moment", "--alpha", "1/4", "--m", "0", "--n", "0"}).code == 0);
}

TEST_CASE("usage errors exit 1 and domain errors exit 2") {
  const Outcome unknown = call({"frobnicate"});
  CHECK(unknown.code == 1);
  CHECK_FALSE(unknown.err.empty());
  CHECK(call({"chamber"}).code == 1);
  CHECK(call({"chamber", "--alpha", "x,y,z,w"}).code == 1);
  const Outcome cube = call({"chamber", "--alpha", "1/2,1/5,1/5,1/5"});
  CHECK(cube.code == 2);
  CHECK(cube.j()["error"]["kind"] == "OutOfCube");
}

TEST_CASE("alpha segment sweep") {
  const std::string grid = R"({"kind":"alpha_segment","from":["3/10","1/5","1/5","1/5"],)"
                           R"("to":["2/5","1/10","1/10","1/10"],"samples":11})";
  const Outcome o = call({"sweep", "--grid", grid});
  REQUIRE(o.code == 0);
  const auto lines = split_lines(o.out);
  REQUIRE(lines.size() == 12);
  CHECK(lines[0] == "index,alpha1,alpha2,alpha3,alpha4,chamber,x0,x1,x2,x3,x4,error");
  CHECK(lines[1].find("B1_1") != std::string::npos);
  CHECK(lines[11].find("E1_1") != std::string::npos);

  const Outcome js = call({"sweep", "--grid", grid, "--json"});
  REQUIRE(js.code == 0);
  CHECK(js.j()["result"].size() == 11);

  const Outcome empty = call({"sweep", "--grid", "{}"});
  CHECK(split_lines(empty.out).size() == 1);
}

TEST_CASE("beta sweep") {
  const std::string grid = R"({"kind":"beta_log","p0":"0.3+0.2i","m":["0.1","0.2","0.1","0.05"],)"
                           R"("from":100,"to":1000,"samples":3,"phase":0.3})";
  const Outcome o = call({"sweep", "--grid", grid});
  REQUIRE(o.code == 0);
  const auto lines = split_lines(o.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "index,beta_re,beta_im,tau_re,tau_im,tau_reduced_re,tau_reduced_im,dist_tau0,error");
}
