#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "panorm/commands.hpp"

namespace {

using namespace panorm;

int emit(const CommandOutput& out, const std::string& path = {}) {
  const std::string text = out.json.dump(2);
  if (path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(path);
    if (!f) throw Error("cannot write " + path);
    f << text << "\n";
  }
  return static_cast<int>(out.status);
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

// Runs one bench case in a child process and parses its JSON line.
BenchCase run_in_child(const std::string& self, const std::string& family, std::size_t ell,
                       const std::string& top, std::uint64_t seed) {
  std::string cmd = shell_quote(self) + " bench-case --family " + family + " --ell " +
                    std::to_string(ell) + " --top " + top + " --seed " + std::to_string(seed);
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw Error("cannot start " + self);
  std::string text;
  char buffer[4096];
  while (std::size_t got = std::fread(buffer, 1, sizeof buffer, pipe)) text.append(buffer, got);
  int status = pclose(pipe);
  if (status != 0) throw Error("bench case " + family + " ell=" + std::to_string(ell) + " failed");
  return bench_case_from_json(parse_json_text(text, "bench child"));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normalizers of primitive permutation groups of product type"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = kDefaultSeed;
  app.add_option("--seed", seed, "Seed for all randomized steps")->default_val(kDefaultSeed);

  // normalizer
  auto* normalizer = app.add_subcommand("normalizer", "Normalizer in Sym(Omega) or in a group M");
  std::string pa_file, ambient_file, group_file, socle_file, out_file;
  bool brute_force = false, report = false;
  normalizer->add_option("--pa", pa_file, "PA-type group JSON");
  normalizer->add_option("--ambient", ambient_file, "Ambient group M");
  normalizer->add_option("--group", group_file, "Group G <= M");
  normalizer->add_option("--socle", socle_file, "Socle generators (skips the socle search)");
  normalizer->add_flag("--brute-force", brute_force, "Cross-check against full enumeration");
  normalizer->add_flag("--report", report, "Include the pipeline report");
  normalizer->add_option("-o,--output", out_file, "Write JSON here instead of stdout");

  // classify / decompose / socle
  std::string input_file;
  auto* classify = app.add_subcommand("classify", "PA recognition");
  auto* decompose = app.add_subcommand("decompose", "Product decomposition");
  auto* socle_cmd = app.add_subcommand("socle", "Socle and its simple factors");
  for (auto* sub : {classify, decompose, socle_cmd}) {
    sub->add_option("input", input_file, "Group JSON")->required();
    sub->add_option("--socle", socle_file, "Socle generators");
    sub->add_option("-o,--output", out_file, "Write JSON here instead of stdout");
  }

  // make-wreath
  auto* make_wreath = app.add_subcommand("make-wreath", "Wreath product of two groups");
  std::string base_file, top_file, action = "product";
  make_wreath->add_option("--base", base_file, "Base group H")->required();
  make_wreath->add_option("--top", top_file, "Top group K")->required();
  make_wreath->add_option("--action", action, "product or imprimitive")
      ->check(CLI::IsMember({"product", "imprimitive"}));
  make_wreath->add_option("-o,--output", out_file, "Write JSON here instead of stdout");

  // bench
  auto* bench = app.add_subcommand("bench", "Benchmark matrix over socle families");
  std::vector<std::string> families{"alt5", "psl25", "alt7"};
  std::size_t ell_min = 2, ell_max = 4, jobs = 1;
  std::string top = "symmetric", format = "markdown", csv_file;
  bench->add_option("--family", families, "alt5, psl25, alt7")
      ->check(CLI::IsMember({"alt5", "psl25", "alt7"}));
  bench->add_option("--ell-min", ell_min)->check(CLI::Range(1, 7));
  bench->add_option("--ell-max", ell_max)->check(CLI::Range(1, 7));
  bench->add_option("--top", top)->check(CLI::IsMember({"symmetric", "cyclic"}));
  bench->add_option("--jobs", jobs, "Cases run in parallel processes")->check(CLI::PositiveNumber);
  bench->add_option("--format", format)->check(CLI::IsMember({"markdown", "csv", "json"}));
  bench->add_option("--csv", csv_file, "Also write CSV here");

  auto* bench_case = app.add_subcommand("bench-case", "One bench case as JSON");
  bench_case->group("");
  std::string case_family;
  std::size_t case_ell = 2;
  bench_case->add_option("--family", case_family)->required();
  bench_case->add_option("--ell", case_ell)->required();
  bench_case->add_option("--top", top);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    ClassifyOptions classify_options;
    classify_options.search.seed = seed;

    if (normalizer->parsed()) {
      if (pa_file.empty() == group_file.empty())
        throw Error("normalizer needs exactly one of --pa or --group");
      NormalizerRequest req{read_group_file(pa_file.empty() ? group_file : pa_file)};
      if (!group_file.empty()) {
        if (ambient_file.empty()) throw Error("--group needs --ambient");
        req.ambient = read_group_file(ambient_file);
      }
      if (!socle_file.empty())
        req.socle_generators = read_generators_file(socle_file, req.group.degree());
      req.brute_force = brute_force;
      req.report = report;
      req.seed = seed;
      return emit(cmd_normalizer(req), out_file);
    }

    if (classify->parsed() || decompose->parsed() || socle_cmd->parsed()) {
      PermGroup g = read_group_file(input_file);
      if (!socle_file.empty())
        classify_options.socle_generators = read_generators_file(socle_file, g.degree());
      if (classify->parsed()) return emit(cmd_classify(g, classify_options), out_file);
      if (decompose->parsed()) return emit(cmd_decompose(g, classify_options), out_file);
      return emit(cmd_socle(g, classify_options), out_file);
    }

    if (make_wreath->parsed())
      return emit(cmd_make_wreath(read_group_file(base_file), read_group_file(top_file), action),
                  out_file);

    if (bench_case->parsed()) {
      std::cout << bench_case_to_json(run_bench_case(case_family, case_ell, top, seed)).dump()
                << "\n";
      return 0;
    }

    if (bench->parsed()) {
      if (ell_min > ell_max) throw Error("--ell-min exceeds --ell-max");
      struct Job {
        std::string family;
        std::size_t ell;
      };
      std::vector<Job> todo;
      for (const auto& f : families)
        for (std::size_t ell = ell_min; ell <= ell_max; ++ell) todo.push_back({f, ell});
      std::vector<BenchCase> rows(todo.size());
      if (jobs == 1) {
        for (std::size_t i = 0; i < todo.size(); ++i) {
          rows[i] = run_bench_case(todo[i].family, todo[i].ell, top, seed);
          std::cerr << todo[i].family << " ell=" << todo[i].ell << " done\n";
        }
      } else {
        std::atomic<std::size_t> next{0};
        std::mutex failure_mutex;
        std::string failure;
        std::vector<std::thread> workers;
        for (std::size_t w = 0; w < std::min(jobs, todo.size()); ++w)
          workers.emplace_back([&] {
            for (std::size_t i = next++; i < todo.size(); i = next++) {
              try {
                rows[i] = run_in_child(argv[0], todo[i].family, todo[i].ell, top, seed);
              } catch (const std::exception& e) {
                std::lock_guard lock(failure_mutex);
                failure = e.what();
              }
            }
          });
        for (auto& w : workers) w.join();
        if (!failure.empty()) throw Error(failure);
      }
      if (!csv_file.empty()) {
        std::ofstream f(csv_file);
        if (!f) throw Error("cannot write " + csv_file);
        f << bench_csv(rows);
      }
      if (format == "csv") {
        std::cout << bench_csv(rows);
      } else if (format == "json") {
        Json all = Json::array();
        for (const auto& r : rows) all.push_back(bench_case_to_json(r));
        std::cout << all.dump(2) << "\n";
      } else {
        std::cout << bench_markdown(rows);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
