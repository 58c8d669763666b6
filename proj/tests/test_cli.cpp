#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "panorm/commands.hpp"
#include "panorm/families.hpp"
#include "panorm/io.hpp"

using namespace panorm;

namespace {

const std::string kData = PANORM_TEST_DATA;

std::string data(const std::string& name) { return kData + "/" + name; }

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string command = std::string(PANORM_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return {};
  Run r;
  char buffer[4096];
  while (std::size_t got = fread(buffer, 1, sizeof buffer, pipe)) r.out.append(buffer, got);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

Json run_json(const std::string& args, int expected_status = 0) {
  auto r = run(args);
  EXPECT_EQ(r.status, expected_status) << args;
  return parse_json_text(r.out, args);
}

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("panorm_test_" + name)).string();
}

}  // namespace

TEST(Json, GroupRoundTrip) {
  for (const auto& g : {psl25_on_6(), product_action_wreath(alt(5), sym(2)), PermGroup::trivial(3)}) {
    Json j = group_to_json(g);
    PermGroup back = group_from_json(j);
    EXPECT_EQ(back.generators(), g.generators());
    EXPECT_EQ(j.at("order").get<std::string>(), to_decimal(g.order()));
    EXPECT_EQ(group_from_json(parse_json_text(j.dump(), "round trip")).generators(), g.generators());
  }
}

TEST(Json, CycleStringsAndArraysAgree) {
  EXPECT_EQ(permutation_from_json(Json("(1,2)(3,4)"), 4), parse_permutation("(1,2)(3,4)", 4));
  EXPECT_EQ(permutation_from_json(Json::array({2, 1, 4, 3}), 4), parse_permutation("(1,2)(3,4)", 4));
  EXPECT_THROW(permutation_from_json(Json::array({2, 1}), 4), Error);
  EXPECT_THROW(permutation_from_json(Json::array({0, 1}), 2), Error);
  EXPECT_THROW(parse_json_text("{\"degree\": 3,", "inline"), Error);
  SetMap f(2, {0, 1, 0, 1});
  EXPECT_EQ(set_map_from_json(set_map_to_json(f)), f);
}

TEST(Fixtures, MatchLibraryConstructions) {
  EXPECT_TRUE(same_group(read_group_file(data("psl25_on_6.json")), psl25_on_6()));
  EXPECT_TRUE(same_group(read_group_file(data("s5_natural.json")), sym(5)));
  EXPECT_TRUE(same_group(read_group_file(data("a5_natural.json")), alt(5)));
  auto w = read_group_file(data("a5_wr_s2_product.json"));
  EXPECT_TRUE(same_group(w, product_action_wreath(alt(5), sym(2))));
  EXPECT_THROW(read_group_file(data("malformed.json")), Error);
  EXPECT_THROW(read_group_file(data("missing.json")), Error);
}

TEST(Cli, NormalizerPa) {
  Json j = run_json("normalizer --pa " + data("a5_wr_s2_product.json") + " --brute-force --report");
  EXPECT_EQ(j.at("order").get<std::string>(), "14400");
  const auto& v = j.at("verification");
  EXPECT_TRUE(v.at("contains_G").get<bool>());
  EXPECT_TRUE(v.at("all_generators_normalize").get<bool>());
  EXPECT_TRUE(v.at("oracle_match").get<bool>());
  const auto& rep = j.at("report");
  EXPECT_EQ(rep.at("ell").get<std::size_t>(), 2u);
  EXPECT_EQ(rep.at("m").get<std::size_t>(), 5u);
  EXPECT_EQ(rep.at("r").get<std::size_t>(), 2u);
  EXPECT_EQ(rep.at("reduced_degree").get<std::size_t>(), 4u);
  EXPECT_TRUE(rep.at("bound_pass").get<bool>());
  EXPECT_EQ(rep.at("orders").at("M").get<std::string>(), "28800");
  EXPECT_TRUE(rep.contains("timings_ms"));
}

TEST(Cli, NormalizerAmbient) {
  Json j = run_json("normalizer --ambient " + data("s5_natural.json") + " --group " +
                    data("a5_natural.json") + " --brute-force");
  EXPECT_EQ(j.at("order").get<std::string>(), "120");
  EXPECT_TRUE(j.at("verification").at("oracle_match").get<bool>());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("normalizer --pa " + data("s5_natural.json")).status, 2);
  Json reject = run_json("normalizer --pa " + data("s5_natural.json"), 2);
  EXPECT_EQ(reject.at("reason").get<std::string>(), "ell = 1");
  EXPECT_EQ(run("normalizer --pa " + data("malformed.json")).status, 1);
  EXPECT_EQ(run("normalizer --pa " + data("missing.json")).status, 1);
  EXPECT_EQ(run("decompose " + data("s5_natural.json")).status, 2);
  EXPECT_NE(run("no-such-command").status, 0);
}

TEST(Cli, Classify) {
  Json pa = run_json("classify " + data("a5_wr_s2_product.json"));
  EXPECT_EQ(pa.at("type").get<std::string>(), "PA");
  EXPECT_EQ(pa.at("ell").get<std::size_t>(), 2u);
  EXPECT_EQ(pa.at("m").get<std::size_t>(), 5u);
  EXPECT_EQ(pa.at("socle_order").get<std::string>(), "3600");
  Json no = run_json("classify " + data("s5_natural.json"));
  EXPECT_EQ(no.at("type").get<std::string>(), "not-PA");
  EXPECT_EQ(no.at("reason").get<std::string>(), "ell = 1");
}

TEST(Cli, DecomposeAndSocle) {
  Json d = run_json("decompose " + data("a5_wr_s2_product.json"));
  EXPECT_EQ(d.at("ell").get<std::size_t>(), 2u);
  SetMap relabel = set_map_from_json(d.at("relabeling"));
  EXPECT_TRUE(relabel.is_bijective());
  EXPECT_EQ(d.at("conjugators").size(), 2u);
  EXPECT_EQ(group_from_json(d.at("G_hat")).order(), 7200);
  EXPECT_EQ(group_from_json(d.at("T")).order(), 60);

  Json s = run_json("socle " + data("a5_wr_s2_product.json"));
  EXPECT_EQ(s.at("order").get<std::string>(), "3600");
  EXPECT_EQ(s.at("factors").size(), 2u);

  // Supplying the socle skips the search and gives the same answer.
  std::string socle_file = temp_file("socle.json");
  std::ofstream(socle_file) << s.at("socle").dump();
  Json again = run_json("normalizer --pa " + data("a5_wr_s2_product.json") + " --socle " + socle_file);
  EXPECT_EQ(again.at("order").get<std::string>(), "14400");
  std::filesystem::remove(socle_file);
}

TEST(Cli, MakeWreath) {
  Json p = run_json("make-wreath --base " + data("a5_natural.json") + " --top " + data("s2.json") +
                    " --action product");
  EXPECT_EQ(p.at("degree").get<std::size_t>(), 25u);
  EXPECT_EQ(p.at("order").get<std::string>(), "7200");
  EXPECT_TRUE(same_group(group_from_json(p), product_action_wreath(alt(5), sym(2))));
  Json i = run_json("make-wreath --base " + data("a5_natural.json") + " --top " + data("s2.json") +
                    " --action imprimitive");
  EXPECT_EQ(i.at("degree").get<std::size_t>(), 10u);
  EXPECT_EQ(i.at("order").get<std::string>(), "7200");
}

TEST(Cli, OutputFile) {
  std::string out = temp_file("out.json");
  auto r = run("classify " + data("a5_wr_s2_product.json") + " -o " + out);
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(read_json_file(out).at("type").get<std::string>(), "PA");
  std::filesystem::remove(out);
}

TEST(Cli, BenchIsDeterministic) {
  auto strip = [](Json rows) {
    for (auto& row : rows)
      for (const char* k : {"socle_ms", "decomposition_ms", "m_construction_ms", "reduction_ms",
                            "backtrack_ms", "preimage_ms", "total_ms"})
        row.erase(k);
    return rows;
  };
  std::string args = "bench --family alt5 --family psl25 --ell-min 2 --ell-max 3 --format json";
  Json a = run_json(args + " --seed 3");
  Json b = run_json(args + " --seed 3 --jobs 2");
  ASSERT_EQ(a.size(), 4u);
  EXPECT_EQ(strip(a), strip(b));
  for (const auto& row : a) EXPECT_TRUE(row.at("order_divisible").get<bool>());
  EXPECT_EQ(a[0].at("degree").get<std::size_t>(), 25u);
  EXPECT_EQ(a[0].at("order").get<std::string>(), "14400");

  auto csv = run("bench --family alt5 --ell-min 2 --ell-max 2 --format csv");
  EXPECT_EQ(csv.status, 0);
  EXPECT_EQ(csv.out.rfind("family,ell,top,degree,", 0), 0u);
}
