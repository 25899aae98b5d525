#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "treeperim/bounds.hpp"
#include "treeperim/compress.hpp"
#include "treeperim/oracle.hpp"
#include "treeperim/sep.hpp"
#include "treeperim/verify.hpp"
#include "treeperim/vset.hpp"
#include "treeperim/witness.hpp"

namespace {

using namespace treeperim;

std::string fmt_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

std::string join_ids(const std::vector<VertexId>& ids, char sep = ';') {
  std::ostringstream os;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) os << sep;
    os << ids[i];
  }
  return os.str();
}

void print_bound_row(const BoundReport& b) {
  std::cout << b.q << "," << b.d << "," << b.source << ","
            << fmt_real(b.lower_real) << "," << b.lower_int << ","
            << fmt_real(b.upper_real) << "," << b.upper_int << "\n";
}

std::vector<VertexId> parse_id_list(const std::string& text) {
  std::vector<VertexId> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoll(item));
  return out;
}

int cmd_profile(int q, int d, const std::string& format, bool with_witness) {
  TreeShape shape(q, d);
  ProfileOracle oracle(shape);
  if (format == "json") {
    nlohmann::json j;
    j["q"] = q;
    j["d"] = d;
    j["phi"] = oracle.values();
    if (with_witness) {
      nlohmann::json ws = nlohmann::json::array();
      for (Count s = 0; s <= shape.size(); ++s)
        ws.push_back(oracle.witness(s).members());
      j["witnesses"] = ws;
    }
    std::cout << j.dump() << "\n";
    return 0;
  }
  std::cout << (with_witness ? "s,phi,witness\n" : "s,phi\n");
  for (Count s = 0; s <= shape.size(); ++s) {
    std::cout << s << "," << oracle.phi(s);
    if (with_witness) std::cout << "," << join_ids(oracle.witness(s).members());
    std::cout << "\n";
  }
  return 0;
}

int cmd_peak(int q, int d, const std::string& format) {
  const auto report = phi_peak(TreeShape(q, d));
  if (format == "json") {
    nlohmann::json j;
    j["q"] = q;
    j["d"] = d;
    j["peak"] = report.peak;
    j["argmax_s"] = report.argmax_s;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << report.peak << "\n";
  }
  return 0;
}

int cmd_bounds(int q, int d, bool priors, std::optional<double> c) {
  std::cout << "q,d,source,lower_real,lower_int,upper_real,upper_int\n";
  print_bound_row(peak_bounds(q, d));
  if (priors)
    for (const auto& b : prior_bounds(q, d, c)) print_bound_row(b);
  return 0;
}

int cmd_witness(int q, int d, const std::string& mode, Count s) {
  TreeShape shape(q, d);
  if (mode == "critical") {
    const auto cs = critical_size(q, d);
    nlohmann::json j;
    j["q"] = q;
    j["d"] = d;
    j["size"] = cs.size;
    j["regime"] = to_string(cs.regime);
    if (cs.cap_levels) j["D"] = *cs.cap_levels;
    std::cout << j.dump() << "\n";
    return 0;
  }
  if (mode == "postorder") {
    const VertexSet set = postorder_prefix(shape, s);
    nlohmann::json j;
    j["q"] = q;
    j["d"] = d;
    j["s"] = s;
    j["members"] = set.members();
    j["boundary"] = boundary(set).members();
    std::cout << j.dump() << "\n";
    return 0;
  }
  if (mode == "construct") {
    std::cout << build_extremal_set(shape, s).to_json() << "\n";
    return 0;
  }
  if (mode == "dp") {
    ProfileOracle oracle(shape);
    const VertexSet w = oracle.witness(s);
    nlohmann::json j = nlohmann::json::parse(w.to_json());
    j["phi"] = oracle.phi(s);
    std::cout << j.dump() << "\n";
    return 0;
  }
  if (mode == "sweep") {
    const auto sweep = upper_bound_sweep(shape);
    nlohmann::json j;
    j["q"] = q;
    j["d"] = d;
    j["bound"] = sweep.bound;
    j["max_boundary"] = sweep.max_boundary;
    j["all_within_bound"] = sweep.all_within_bound;
    j["observations_ok"] = sweep.observations_ok;
    j["failing_s"] = sweep.failing_s;
    std::cout << j.dump() << "\n";
    return 0;
  }
  throw CLI::ValidationError("--mode must be one of critical, postorder, "
                             "construct, dp, sweep");
}

int cmd_compress(int q, int d, const std::string& mode,
                 const std::string& members, Count random_s, Count dp_s,
                 std::uint64_t seed, Count step_cap) {
  TreeShape shape(q, d);
  std::optional<VertexSet> input;
  if (!members.empty())
    input = VertexSet::from_members(shape, parse_id_list(members));
  else if (random_s >= 0) {
    Rng rng(seed);
    input = VertexSet::random(shape, random_s, rng);
  } else if (dp_s >= 0) {
    input = ProfileOracle(shape).witness(dp_s);
  } else {
    throw CLI::ValidationError(
        "one of --members, --random-s, --dp-witness is required");
  }
  FixOptions opt;
  opt.step_cap = step_cap;
  FixResult fix = mode == "left"   ? left_fix(*input, opt)
                  : mode == "down" ? down_fix(*input, opt)
                                   : aeolian_fix(*input, opt);
  std::cout << "{\"initial\":" << input->to_json()
            << ",\"boundary\":" << boundary_size(*input) << "}\n";
  std::cout << fix.trace.to_json_lines();
  std::cout << "{\"result\":" << fix.set.to_json()
            << ",\"boundary\":" << boundary_size(fix.set) << ",\"terminated\":\""
            << (fix.fixpoint() ? "fixpoint" : "step-cap") << "\"}\n";
  return fix.fixpoint() ? 0 : 1;
}

int cmd_nesting(int q, int d, bool local, int dsub, Count s) {
  if (local) {
    std::cout << local_structure_report(dsub, s).to_json() << "\n";
    return 0;
  }
  TreeShape shape(q, d);
  const auto report = nesting_report(shape);
  std::cout << "q,d,s,step_nested,full_chain\n";
  for (Count i = 0; i < shape.size(); ++i)
    std::cout << q << "," << d << "," << i << ","
              << (report.step_nested[static_cast<std::size_t>(i)] ? 1 : 0)
              << "," << (report.full_chain ? 1 : 0) << "\n";
  return 0;
}

int cmd_gap(int q, int d_lo, int d_hi) {
  std::cout << "q,d,vs,peak,gap\n";
  for (int d = d_lo; d <= d_hi; ++d) {
    const auto g = gap_report(TreeShape(q, d));
    std::cout << g.q << "," << g.d << "," << g.vs << "," << g.peak << ","
              << g.gap << "\n";
  }
  return 0;
}

int cmd_pathwidth(int q, int d, Count random_n, std::uint64_t seed,
                  bool dump_layout) {
  if (random_n >= 0) {
    Rng rng(seed);
    const RootedTree tree = RootedTree::random(random_n, rng);
    nlohmann::json j;
    j["n"] = random_n;
    j["seed"] = seed;
    j["tree_pathwidth"] = tree_pathwidth(tree);
    if (random_n <= 20) j["vs_exact"] = vs_exact(tree);
    std::cout << j.dump() << "\n";
    return 0;
  }
  TreeShape shape(q, d);
  const Layout layout = optimal_layout(shape);
  if (dump_layout) {
    std::cout << layout.to_json() << "\n";
    return 0;
  }
  const Count formula = pathwidth_formula(q, d);
  const Count computed = tree_pathwidth(RootedTree::complete(shape));
  const Count measured = vs_of_layout(RootedTree::complete(shape), layout);
  std::cout << "q,d,formula,tree_pathwidth,layout_vs\n";
  std::cout << q << "," << d << "," << formula << "," << computed << ","
            << measured << "\n";
  return formula == computed && formula == measured ? 0 : 1;
}

int cmd_verify(const std::string& artifacts) {
  const auto results = run_acceptance(artifacts);
  for (const auto& r : results) {
    std::printf("criterion %2d %s %s%s%s [%.2fs]\n", r.id,
                r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.empty() ? "" : " -- ", r.detail.c_str(), r.seconds);
  }
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact vertex isoperimetry on complete q-ary trees"};
  app.require_subcommand(1);

  int q = 2, d = 1;
  Count s = 0;
  std::string format = "csv";
  bool with_witness = false;

  auto add_qd = [&](CLI::App* cmd, bool need_d = true) {
    cmd->add_option("--q", q, "branching factor")->required();
    if (need_d) cmd->add_option("--d", d, "depth")->required();
  };

  auto* profile = app.add_subcommand("profile", "exact isoperimetric profile");
  add_qd(profile);
  profile->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  profile->add_flag("--witness", with_witness, "include one witness per s");

  auto* peak = app.add_subcommand("peak", "isoperimetric peak");
  add_qd(peak);
  peak->add_option("--format", format)
      ->check(CLI::IsMember({"plain", "json"}));

  bool priors = false;
  double c_value = 0.0;
  auto* bounds = app.add_subcommand("bounds", "closed-form peak bounds");
  add_qd(bounds);
  bounds->add_flag("--priors", priors, "include the earlier published bounds");
  auto* copt = bounds->add_option(
      "--c", c_value, "constant for the scaled-sqrt prior bound");

  std::string mode = "construct";
  auto* witness =
      app.add_subcommand("witness", "constructive and extremal sets");
  add_qd(witness);
  witness->add_option("--mode", mode,
                      "critical | postorder | construct | dp | sweep");
  witness->add_option("--s", s, "cardinality");

  std::string members;
  std::string fix_mode = "aeolian";
  Count random_s = -1, dp_s = -1, step_cap = 0;
  std::uint64_t seed = 0;
  auto* compress = app.add_subcommand("compress", "run compression drivers");
  add_qd(compress);
  compress->add_option("--mode", fix_mode)
      ->check(CLI::IsMember({"left", "down", "aeolian"}));
  compress->add_option("--members", members, "explicit member list, comma separated");
  compress->add_option("--random-s", random_s, "random input of this size");
  compress->add_option("--dp-witness", dp_s, "start from a profile witness");
  compress->add_option("--seed", seed);
  compress->add_option("--step-cap", step_cap,
                       "override the step cap (default |V|^2 or "
                       "TREEPERIM_MAX_STEPS)");

  bool local = false;
  int dsub = 5;
  auto* nesting = app.add_subcommand("nesting", "nesting of optimal sets");
  nesting->add_option("--q", q)->default_val(2);
  nesting->add_option("--d", d)->default_val(2);
  nesting->add_flag("--local", local, "local structure of a ternary subtree");
  nesting->add_option("--dsub", dsub, "subtree depth for --local");
  nesting->add_option("--s", s, "cardinality for --local");

  int d_hi = -1;
  auto* gap = app.add_subcommand("gap", "separation number vs peak");
  add_qd(gap);
  gap->add_option("--d-max", d_hi, "sweep depths d..d-max");

  Count random_n = -1;
  bool dump_layout = false;
  auto* pathwidth = app.add_subcommand("pathwidth", "tree pathwidth");
  pathwidth->add_option("--q", q);
  pathwidth->add_option("--d", d);
  pathwidth->add_option("--random-n", random_n, "random tree on n vertices");
  pathwidth->add_option("--seed", seed);
  pathwidth->add_flag("--layout", dump_layout,
                      "print the optimal layout as a JSON rank array");

  std::string artifacts = "artifacts";
  auto* verify = app.add_subcommand("verify", "run the verification suites");
  verify->add_option("--artifacts", artifacts, "artifact output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (profile->parsed()) return cmd_profile(q, d, format, with_witness);
    if (peak->parsed())
      return cmd_peak(q, d, format == "csv" ? "plain" : format);
    if (bounds->parsed())
      return cmd_bounds(q, d, priors,
                        copt->count() ? std::optional<double>(c_value)
                                      : std::nullopt);
    if (witness->parsed()) return cmd_witness(q, d, mode, s);
    if (compress->parsed())
      return cmd_compress(q, d, fix_mode, members, random_s, dp_s, seed,
                          step_cap);
    if (nesting->parsed()) return cmd_nesting(q, d, local, dsub, s);
    if (gap->parsed()) return cmd_gap(q, d, d_hi < d ? d : d_hi);
    if (pathwidth->parsed())
      return cmd_pathwidth(q, d, random_n, seed, dump_layout);
    if (verify->parsed()) return cmd_verify(artifacts);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
