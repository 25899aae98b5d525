#include "treeperim/verify.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "treeperim/bounds.hpp"
#include "treeperim/compress.hpp"
#include "treeperim/oracle.hpp"
#include "treeperim/sep.hpp"
#include "treeperim/witness.hpp"

namespace treeperim {
namespace {

constexpr std::uint64_t kSeedBase = 0x7ee9e51u;

struct Context {
  std::map<std::pair<int, int>, std::unique_ptr<ProfileOracle>> oracles;
  std::map<std::pair<int, int>, UpperBoundSweep> sweeps;

  const ProfileOracle& oracle(int q, int d) {
    auto key = std::make_pair(q, d);
    auto it = oracles.find(key);
    if (it == oracles.end())
      it = oracles
               .emplace(key,
                        std::make_unique<ProfileOracle>(TreeShape(q, d)))
               .first;
    return *it->second;
  }

  const UpperBoundSweep& sweep(int q, int d) {
    auto key = std::make_pair(q, d);
    auto it = sweeps.find(key);
    if (it == sweeps.end())
      it = sweeps.emplace(key, upper_bound_sweep(TreeShape(q, d))).first;
    return it->second;
  }

  int threshold(int q, int d_lo, int d_hi) {
    int t = d_hi + 1;
    for (int d = d_hi; d >= d_lo; --d) {
      if (!sweep(q, d).all_within_bound) break;
      t = d;
    }
    return t;
  }
};

Count peak_of(const ProfileOracle& oracle) {
  Count peak = 0;
  for (Count v : oracle.values()) peak = std::max(peak, v);
  return peak;
}

bool trace_monotone(const CompressionTrace& trace) {
  for (const auto& st : trace.steps)
    if (st.boundary_after > st.boundary_before) return false;
  return true;
}

using CheckFn = std::function<bool(std::string&)>;

CriterionResult run_criterion(int id, const std::string& name,
                              const CheckFn& fn) {
  CriterionResult r{id, name, false, "", 0.0};
  const auto start = std::chrono::steady_clock::now();
  try {
    r.pass = fn(r.detail);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& artifact_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(artifact_dir);
  Context ctx;
  std::vector<CriterionResult> results;

  results.push_back(run_criterion(1, "oracle agreement", [&](std::string& why) {
    std::vector<std::pair<int, int>> shapes = {{2, 1}, {2, 2}, {2, 3},
                                               {3, 1}, {3, 2}};
    for (int q = 4; q <= 14; ++q) shapes.emplace_back(q, 1);
    for (auto [q, d] : shapes) {
      TreeShape shape(q, d);
      const auto& oracle = ctx.oracle(q, d);
      for (Count s = 0; s <= shape.size(); ++s) {
        if (phi_bruteforce(shape, s) != oracle.phi(s)) {
          why = "mismatch at q=" + std::to_string(q) +
                " d=" + std::to_string(d) + " s=" + std::to_string(s);
          return false;
        }
      }
    }
    return true;
  }));
  if (results.back().pass && results.back().seconds >= 60.0) {
    results.back().pass = false;
    results.back().detail = "runtime limit 60 s exceeded";
  }

  results.push_back(
      run_criterion(2, "exact peak for q >= 5", [&](std::string& why) {
        for (int q = 5; q <= 7; ++q) {
          for (int d = 1; d <= 3; ++d) {
            const Count peak = peak_of(ctx.oracle(q, d));
            if (peak != d) {
              why = "peak(" + std::to_string(q) + "," + std::to_string(d) +
                    ")=" + std::to_string(peak);
              return false;
            }
          }
        }
        return true;
      }));
  if (results.back().pass && results.back().seconds >= 60.0) {
    results.back().pass = false;
    results.back().detail = "runtime limit 60 s exceeded";
  }

  results.push_back(
      run_criterion(3, "peak band for q in {3,4}", [&](std::string& why) {
        const int t3 = ctx.threshold(3, 2, 8);
        const int t4 = ctx.threshold(4, 2, 6);
        std::ostringstream note;
        note << "thresholds q=3:" << t3 << " q=4:" << t4;
        auto check = [&](int q, int d_hi, int threshold) {
          for (int d = 2; d <= d_hi; ++d) {
            const auto b = peak_bounds(q, d);
            const Count upper =
                d >= threshold ? b.upper_int : pathwidth_formula(q, d);
            const Count peak = peak_of(ctx.oracle(q, d));
            if (peak < b.lower_int || peak > upper) {
              why = "peak(" + std::to_string(q) + "," + std::to_string(d) +
                    ")=" + std::to_string(peak) + " outside [" +
                    std::to_string(b.lower_int) + "," + std::to_string(upper) +
                    "]";
              return false;
            }
          }
          return true;
        };
        if (!check(3, 8, t3) || !check(4, 6, t4)) return false;
        why = note.str();
        return true;
      }));
  if (results.back().pass && results.back().seconds >= 600.0) {
    results.back().pass = false;
    results.back().detail = "runtime limit 600 s exceeded";
  }

  results.push_back(
      run_criterion(4, "peak band for q = 2", [&](std::string& why) {
        for (int d = 2; d <= 12; ++d) {
          const auto b = peak_bounds(2, d);
          const Count peak = peak_of(ctx.oracle(2, d));
          if (static_cast<double>(peak) < b.lower_real - 1e-9 ||
              peak > b.upper_int) {
            why = "peak(2," + std::to_string(d) + ")=" + std::to_string(peak);
            return false;
          }
        }
        return true;
      }));
  if (results.back().pass && results.back().seconds >= 600.0) {
    results.back().pass = false;
    results.back().detail = "runtime limit 600 s exceeded";
  }

  results.push_back(
      run_criterion(5, "compression safety", [&](std::string& why) {
        std::vector<std::pair<int, int>> shapes;
        for (int q : {2, 3, 4, 5})
          for (int d : {2, 3, 4}) shapes.emplace_back(q, d);
        int remaining = 1000;
        for (std::size_t idx = 0; idx < shapes.size(); ++idx) {
          const auto [q, d] = shapes[idx];
          TreeShape shape(q, d);
          const int here = remaining / static_cast<int>(shapes.size() - idx);
          remaining -= here;
          Rng rng(kSeedBase + idx * 7919);
          for (int i = 0; i < here; ++i) {
            const Count s = static_cast<Count>(
                rng.below(static_cast<std::uint64_t>(shape.size()) + 1));
            const VertexSet set = VertexSet::random(shape, s, rng);
            auto describe = [&](const char* what) {
              why = std::string(what) + " at q=" + std::to_string(q) +
                    " d=" + std::to_string(d) + " i=" + std::to_string(i);
            };
            const auto lf = left_fix(set);
            if (!lf.fixpoint()) return describe("left_fix step cap"), false;
            if (lf.set.cardinality() != s ||
                !trace_monotone(lf.trace) || !is_left_ordered(lf.set))
              return describe("left_fix output"), false;
            const auto df = down_fix(set);
            if (!df.fixpoint()) return describe("down_fix step cap"), false;
            if (df.set.cardinality() != s || !trace_monotone(df.trace) ||
                find_down_swappable(df.set))
              return describe("down_fix output"), false;
            const auto af = aeolian_fix(set);
            if (!af.fixpoint()) return describe("aeolian_fix step cap"), false;
            if (af.set.cardinality() != s || !trace_monotone(af.trace))
              return describe("aeolian_fix trace"), false;
            if (!is_left_ordered(af.set) || find_down_swappable(af.set))
              return describe("aeolian_fix not left+down compressed"), false;
            if (!check_trichotomy(af.set).ok)
              return describe("aeolian_fix trichotomy"), false;
            if (!check_peak_order(af.set).ok)
              return describe("aeolian_fix peak order"), false;
          }
        }
        return true;
      }));

  results.push_back(run_criterion(
      6, "compressed witnesses stay optimal", [&](std::string& why) {
        for (auto [q, d] : {std::pair<int, int>{3, 4}, {2, 6}}) {
          TreeShape shape(q, d);
          const auto& oracle = ctx.oracle(q, d);
          for (Count s = 0; s <= shape.size(); ++s) {
            const VertexSet w = oracle.witness(s);
            if (boundary_size(w) != oracle.phi(s)) {
              why = "witness border mismatch at q=" + std::to_string(q) +
                    " d=" + std::to_string(d) + " s=" + std::to_string(s);
              return false;
            }
            const auto af = aeolian_fix(w);
            if (!af.fixpoint() ||
                boundary_size(af.set) != oracle.phi(s)) {
              why = "aeolian_fix changed optimality at q=" + std::to_string(q) +
                    " d=" + std::to_string(d) + " s=" + std::to_string(s);
              return false;
            }
          }
        }
        return true;
      }));

  results.push_back(run_criterion(
      7, "profile at critical cardinalities", [&](std::string& why) {
        auto fails = [&](int q, int d, Count need) {
          const auto cs = critical_size(q, d);
          const Count got = ctx.oracle(q, d).phi(cs.size);
          if (got >= need) return false;
          why = "phi(q=" + std::to_string(q) + ",d=" + std::to_string(d) +
                ",s=" + std::to_string(cs.size) + ")=" + std::to_string(got) +
                " < " + std::to_string(need);
          return true;
        };
        for (int d : {2, 3})
          if (fails(5, d, d)) return false;
        for (int d = 4; d <= 8; ++d)
          if (fails(3, d, peak_bounds(3, d).lower_int)) return false;
        for (int d : {10, 12})
          if (fails(2, d, peak_bounds(2, d).lower_int)) return false;
        return true;
      }));

  results.push_back(run_criterion(
      8, "constructive upper bound", [&](std::string& why) {
        const int t3 = ctx.threshold(3, 2, 8);
        const int t4 = ctx.threshold(4, 2, 6);
        for (auto [q, d, threshold] :
             {std::tuple<int, int, int>{3, 7, t3}, {3, 8, t3}, {4, 5, t4},
              {4, 6, t4}}) {
          const auto& sweep = ctx.sweep(q, d);
          if (!sweep.observations_ok) {
            why = "observations failed at q=" + std::to_string(q) +
                  " d=" + std::to_string(d) + ": " + sweep.observation_fail;
            return false;
          }
          if (d >= threshold && !sweep.all_within_bound) {
            why = "bound exceeded at q=" + std::to_string(q) +
                  " d=" + std::to_string(d) +
                  " max=" + std::to_string(sweep.max_boundary) + " bound=" +
                  std::to_string(sweep.bound);
            return false;
          }
        }
        return true;
      }));

  results.push_back(run_criterion(
      9, "pathwidth routes agree", [&](std::string& why) {
        const std::vector<std::pair<int, int>> ranges = {{2, 12}, {3, 6},
                                                         {4, 5}};
        for (auto [q, d_hi] : ranges) {
          for (int d = 0; d <= d_hi; ++d) {
            TreeShape shape(q, d);
            const Count want = pathwidth_formula(q, d);
            const Count pw = tree_pathwidth(RootedTree::complete(shape));
            if (pw != want) {
              why = "tree_pathwidth(" + std::to_string(q) + "," +
                    std::to_string(d) + ")=" + std::to_string(pw) +
                    " != " + std::to_string(want);
              return false;
            }
            const Count measured =
                vs_of_layout(RootedTree::complete(shape), optimal_layout(shape));
            if (measured != want) {
              why = "optimal_layout(" + std::to_string(q) + "," +
                    std::to_string(d) + ") achieves " +
                    std::to_string(measured);
              return false;
            }
          }
        }
        Rng rng(kSeedBase + 101);
        for (int i = 0; i < 100; ++i) {
          const Count n = 1 + static_cast<Count>(rng.below(12));
          const RootedTree tree = RootedTree::random(n, rng);
          if (vs_exact(tree) != tree_pathwidth(tree)) {
            why = "vs_exact != tree_pathwidth on random tree " +
                  std::to_string(i);
            return false;
          }
        }
        return true;
      }));

  results.push_back(run_criterion(
      10, "layout separation dominates the peak", [&](std::string& why) {
        Rng rng(kSeedBase + 202);
        for (int i = 0; i < 100; ++i) {
          const Count n = 1 + static_cast<Count>(rng.below(12));
          const RootedTree tree = RootedTree::random(n, rng);
          const Layout layout = Layout::random(n, rng);
          if (vs_of_layout(tree, layout) < phi_peak_exhaustive(tree)) {
            why = "violation on sample " + std::to_string(i);
            return false;
          }
        }
        return true;
      }));

  results.push_back(run_criterion(
      11, "separation exceeds the peak somewhere", [&](std::string& why) {
        std::ofstream csv(std::filesystem::path(artifact_dir) / "gaps_q2.csv");
        csv << "q,d,vs,peak,gap\n";
        bool some_positive = false;
        for (int d = 1; d <= 12; ++d) {
          TreeShape shape(2, d);
          const Count vs = pathwidth_formula(2, d);
          const Count peak = peak_of(ctx.oracle(2, d));
          const Count gap = vs - peak;
          csv << 2 << "," << d << "," << vs << "," << peak << "," << gap
              << "\n";
          if (gap < 0) {
            why = "negative gap at d=" + std::to_string(d);
            return false;
          }
          if (gap >= 1) some_positive = true;
        }
        if (!some_positive) {
          why = "no depth with gap >= 1";
          return false;
        }
        return true;
      }));

  results.push_back(run_criterion(
      12, "report artifacts generated consistently", [&](std::string& why) {
        namespace fs = std::filesystem;
        {
          std::ofstream csv(fs::path(artifact_dir) / "postorder_rates.csv");
          csv << "q,d,equal,total,rate\n";
          for (int q : {2, 3}) {
            for (int d = 1; d <= 5; ++d) {
              const auto& oracle = ctx.oracle(q, d);
              const auto rate = postorder_equality_rate(TreeShape(q, d), oracle);
              if (!rate.never_below) {
                why = "postorder prefix beat the oracle at q=" +
                      std::to_string(q) + " d=" + std::to_string(d);
                return false;
              }
              csv << q << "," << d << "," << rate.equal_count << ","
                  << rate.total << ","
                  << (static_cast<double>(rate.equal_count) /
                      static_cast<double>(rate.total))
                  << "\n";
            }
          }
        }
        {
          std::ofstream csv(fs::path(artifact_dir) / "nesting_q2.csv");
          csv << "q,d,s,step_nested,full_chain\n";
          for (int d = 1; d <= 3; ++d) {
            const auto report = nesting_report(TreeShape(2, d));
            for (Count s = 0; s < TreeShape(2, d).size(); ++s)
              csv << 2 << "," << d << "," << s << ","
                  << (report.step_nested[static_cast<std::size_t>(s)] ? 1 : 0)
                  << "," << (report.full_chain ? 1 : 0) << "\n";
          }
        }
        {
          const auto report = local_structure_report(5, 178);
          if (report.witness_s.cardinality() != 178 ||
              report.witness_s1.cardinality() != 179 ||
              boundary_size(report.witness_s) != report.phi_s ||
              boundary_size(report.witness_s1) != report.phi_s1) {
            why = "local structure report inconsistent";
            return false;
          }
          std::ofstream out(fs::path(artifact_dir) /
                            "local_structure_d5_s178.json");
          out << report.to_json() << "\n";
        }
        return true;
      }));

  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace treeperim
