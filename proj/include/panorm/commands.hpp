#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "backtrack.hpp"
#include "error.hpp"
#include "families.hpp"
#include "io.hpp"
#include "reduction.hpp"
#include "structure.hpp"
#include "wreath.hpp"

namespace panorm {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed;

/// Exit status shared by all commands.
enum class Status { Ok = 0, Error = 1, NotPA = 2 };

struct CommandOutput {
  Json json;
  Status status = Status::Ok;
};

inline Permutation random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{0});
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(std::move(images));
}

/// Recomputed from the output group, not from pipeline state.
inline Json verification_block(const PermGroup& n, const PermGroup& g,
                               const std::optional<PermGroup>& oracle) {
  bool all_normalize = true;
  for (const auto& x : n.generators()) all_normalize = all_normalize && is_normalizing(x, g);
  Json v{{"contains_G", is_subgroup(n, g)}, {"all_generators_normalize", all_normalize}};
  if (oracle) {
    v["oracle_order"] = to_decimal(oracle->order());
    v["oracle_match"] = oracle->order() == n.order() && is_subgroup(*oracle, n);
  }
  return v;
}

inline Json pipeline_report(const PermGroup& g, const PipelineResult& r) {
  const auto& t = r.timings;
  return {
      {"ell", r.decomposition.ell},
      {"m", r.decomposition.m},
      {"r", r.bound.r},
      {"reduced_degree", r.bound.reduced_degree},
      {"bound", r.bound.bound},
      {"bound_pass", r.bound.pass},
      {"orders",
       {{"G", to_decimal(g.order())},
        {"socle", to_decimal(r.decomposition.socle.socle.order())},
        {"T", to_decimal(r.decomposition.t.order())},
        {"NT", to_decimal(r.nt.order())},
        {"M", to_decimal(r.m_group.order())},
        {"rho_G", to_decimal(r.rho_g.order())},
        {"rho_M", to_decimal(r.rho_m.order())},
        {"U", to_decimal(r.u.order())},
        {"N", to_decimal(r.normalizer.order())}}},
      {"timings_ms",
       {{"socle", t.socle_ms},
        {"decomposition", t.decomposition_ms},
        {"m_construction", t.m_construction_ms},
        {"reduction", t.reduction_ms},
        {"backtrack", t.backtrack_ms},
        {"preimage", t.preimage_ms}}},
  };
}

struct NormalizerRequest {
  PermGroup group;
  std::optional<PermGroup> ambient;  // N_M(G) mode when set
  std::optional<std::vector<Permutation>> socle_generators;
  bool brute_force = false;
  bool report = false;
  std::uint64_t seed = kDefaultSeed;
  Order oracle_cap = 1'000'000;
};

inline CommandOutput cmd_normalizer(const NormalizerRequest& req) {
  const PermGroup& g = req.group;
  if (req.ambient) {
    PermGroup n = normalizer_in_group(*req.ambient, g);
    std::optional<PermGroup> oracle;
    if (req.brute_force) oracle = brute_force_normalizer(*req.ambient, g, req.oracle_cap);
    Json out = group_to_json(n);
    out["verification"] = verification_block(n, g, oracle);
    return {std::move(out)};
  }

  PipelineOptions options;
  options.classify.search.seed = req.seed;
  options.classify.socle_generators = req.socle_generators;
  std::optional<PipelineResult> result;
  try {
    result = normalizer_pa_detailed(g, options);
  } catch (const NotPAError& e) {
    return {Json{{"type", "not-PA"}, {"reason", e.reason()}}, Status::NotPA};
  }
  const PipelineResult& r = *result;
  std::optional<PermGroup> oracle;
  if (req.brute_force) {
    PermGroup m = conjugate(r.m_group, r.decomposition.relabel_permutation().inverse());
    oracle = brute_force_normalizer(m, g, req.oracle_cap);
  }
  Json out = group_to_json(r.normalizer);
  out["verification"] = verification_block(r.normalizer, g, oracle);
  if (req.report) out["report"] = pipeline_report(g, r);
  return {std::move(out)};
}

inline CommandOutput cmd_classify(const PermGroup& g, const ClassifyOptions& options = {}) {
  try {
    auto pd = classify_pa(g, options);
    return {Json{{"type", "PA"},
                 {"ell", pd.ell},
                 {"m", pd.m},
                 {"socle_order", to_decimal(pd.socle.socle.order())}}};
  } catch (const NotPAError& e) {
    return {Json{{"type", "not-PA"}, {"reason", e.reason()}}};
  }
}

inline CommandOutput cmd_decompose(const PermGroup& g, const ClassifyOptions& options = {}) {
  std::optional<ProductDecomposition> result;
  try {
    result = classify_pa(g, options);
  } catch (const NotPAError& e) {
    return {Json{{"type", "not-PA"}, {"reason", e.reason()}}, Status::NotPA};
  }
  const ProductDecomposition& pd = *result;
  Json projections = Json::array();
  for (const auto& p : pd.projections) projections.push_back(set_map_to_json(p.map));
  Json conjugators = Json::array();
  for (const auto& c : pd.conjugators) conjugators.push_back(permutation_to_json(c));
  return {Json{{"ell", pd.ell},
               {"m", pd.m},
               {"T", group_to_json(pd.t)},
               {"relabeling", set_map_to_json(pd.relabeling.map)},
               {"projections", std::move(projections)},
               {"conjugators", std::move(conjugators)},
               {"G_hat", group_to_json(pd.g_hat)}}};
}

inline CommandOutput cmd_socle(const PermGroup& g, const ClassifyOptions& options = {}) {
  std::optional<SocleData> result;
  try {
    result = options.socle_generators ? socle_from_generators(g, *options.socle_generators, options.search)
                                  : socle(g, options.search);
  } catch (const NotPAError& e) {
    return {Json{{"type", "not-PA"}, {"reason", e.reason()}}, Status::NotPA};
  }
  const SocleData& sd = *result;
  Json factors = Json::array();
  for (const auto& f : sd.factors) factors.push_back(group_to_json(f));
  return {Json{{"order", to_decimal(sd.socle.order())},
               {"ell", sd.ell()},
               {"socle", group_to_json(sd.socle)},
               {"factors", std::move(factors)}}};
}

inline CommandOutput cmd_make_wreath(const PermGroup& base, const PermGroup& top,
                                     const std::string& action) {
  if (action == "product") return {group_to_json(product_action_wreath(base, top))};
  if (action == "imprimitive") return {group_to_json(imprimitive_wreath(base, top))};
  throw Error("unknown action '" + action + "' (expected product or imprimitive)");
}

struct BenchCase {
  std::string family;
  std::size_t ell = 0;
  std::string top = "symmetric";
  std::size_t degree = 0;
  PhaseTimings timings;
  double total_ms = 0;
  std::string order;
  std::string socle_order;
  std::size_t reduced_degree = 0;
  bool order_divisible = false;
};

/// The benchmark input: base wr top in product action, conjugated by a
/// random element of Sym(degree).
inline PermGroup bench_group(const std::string& family, std::size_t ell, const std::string& top,
                             std::uint64_t seed) {
  PermGroup w = product_action_wreath(family_base(family), family_top(top, ell));
  std::mt19937_64 rng(seed ^ (std::uint64_t{ell} << 32));
  Permutation c = random_permutation(w.degree(), rng);
  return conjugate(w, c).with_known_order(w.order());
}

inline BenchCase run_bench_case(const std::string& family, std::size_t ell, const std::string& top,
                                std::uint64_t seed) {
  BenchCase bc{family, ell, top};
  PermGroup g = bench_group(family, ell, top, seed);
  bc.degree = g.degree();
  PipelineOptions options;
  options.classify.search.seed = seed;
  auto start = std::chrono::steady_clock::now();
  auto r = normalizer_pa_detailed(g, options);
  bc.total_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  bc.timings = r.timings;
  bc.order = to_decimal(r.normalizer.order());
  const Order socle_order = r.decomposition.socle.socle.order();
  bc.socle_order = to_decimal(socle_order);
  bc.reduced_degree = r.bound.reduced_degree;
  bc.order_divisible = r.normalizer.order() % socle_order == 0;
  return bc;
}

inline Json bench_case_to_json(const BenchCase& bc) {
  const auto& t = bc.timings;
  return {{"family", bc.family},
          {"ell", bc.ell},
          {"top", bc.top},
          {"degree", bc.degree},
          {"socle_ms", t.socle_ms},
          {"decomposition_ms", t.decomposition_ms},
          {"m_construction_ms", t.m_construction_ms},
          {"reduction_ms", t.reduction_ms},
          {"backtrack_ms", t.backtrack_ms},
          {"preimage_ms", t.preimage_ms},
          {"total_ms", bc.total_ms},
          {"order", bc.order},
          {"socle_order", bc.socle_order},
          {"reduced_degree", bc.reduced_degree},
          {"order_divisible", bc.order_divisible}};
}

inline BenchCase bench_case_from_json(const Json& j) {
  BenchCase bc;
  bc.family = j.at("family").get<std::string>();
  bc.ell = j.at("ell").get<std::size_t>();
  bc.top = j.at("top").get<std::string>();
  bc.degree = j.at("degree").get<std::size_t>();
  bc.timings = {j.at("socle_ms").get<double>(),     j.at("decomposition_ms").get<double>(),
                j.at("m_construction_ms").get<double>(), j.at("reduction_ms").get<double>(),
                j.at("backtrack_ms").get<double>(),  j.at("preimage_ms").get<double>()};
  bc.total_ms = j.at("total_ms").get<double>();
  bc.order = j.at("order").get<std::string>();
  bc.socle_order = j.at("socle_order").get<std::string>();
  bc.reduced_degree = j.at("reduced_degree").get<std::size_t>();
  bc.order_divisible = j.at("order_divisible").get<bool>();
  return bc;
}

inline const char* kBenchColumns[] = {"family", "ell", "top", "degree", "socle_ms",
                                      "decomposition_ms", "m_construction_ms", "reduction_ms",
                                      "backtrack_ms", "preimage_ms", "total_ms", "order"};

inline std::string bench_csv(const std::vector<BenchCase>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < std::size(kBenchColumns); ++i)
    out << (i ? "," : "") << kBenchColumns[i];
  out << "\n";
  for (const auto& bc : rows) {
    const auto& t = bc.timings;
    out << bc.family << "," << bc.ell << "," << bc.top << "," << bc.degree << "," << t.socle_ms
        << "," << t.decomposition_ms << "," << t.m_construction_ms << "," << t.reduction_ms << ","
        << t.backtrack_ms << "," << t.preimage_ms << "," << bc.total_ms << "," << bc.order << "\n";
  }
  return out.str();
}

inline std::string bench_markdown(const std::vector<BenchCase>& rows) {
  auto socle_type = [](const BenchCase& bc) {
    std::string base = bc.family == "alt5" ? "A5" : bc.family == "psl25" ? "PSL(2,5)" : "A7";
    return "(" + base + ")^" + std::to_string(bc.ell);
  };
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(1);
  out << "| socle type | top | degree | socle ms | decomposition ms | M ms | reduction ms | "
         "backtrack ms | preimage ms | total ms | order |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& bc : rows) {
    const auto& t = bc.timings;
    out << "| " << socle_type(bc) << " | " << bc.top << " | " << bc.degree << " | " << t.socle_ms
        << " | " << t.decomposition_ms << " | " << t.m_construction_ms << " | " << t.reduction_ms
        << " | " << t.backtrack_ms << " | " << t.preimage_ms << " | " << bc.total_ms << " | "
        << bc.order << " |\n";
  }
  return out.str();
}

}  // namespace panorm
