// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <string>

#include "weft/verify.hpp"

namespace {

int failures = 0;

template <typename Fn>
void run(int number, const std::string& what, Fn fn, double limit_seconds = 0.0) {
  auto t0 = std::chrono::steady_clock::now();
  weft::SuiteResult r = fn();
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = limit_seconds <= 0.0 || secs <= limit_seconds;
  bool pass = r.pass && in_time;
  if (!pass) ++failures;
  std::printf("%s criterion %2d: %s (%.2fs%s)\n", pass ? "PASS" : "FAIL", number, what.c_str(),
              secs, in_time ? "" : ", over the time limit");
  for (const auto& line : r.lines) std::printf("         %s\n", line.c_str());
}

}  // namespace

int main() {
  weft::RunConfig cfg;

  run(1, "unique split of k^2+2k for prime k+1 <= 101, under 5 s",
      [] { return weft::verify_unique_split(100); }, 5.0);
  run(2, "gadget satisfying-assignment counts (4 / 9 / 9), under 10 s",
      [] { return weft::verify_gadget_counts(); }, 10.0);
  run(3, "sum composition vs double-sum oracle, 50 bodies x 10 points",
      [&] { return weft::verify_compose(cfg, 50, 10); });
  run(4, "weft-1 normal form structure + 20-point agreement, 100 circuits",
      [&] { return weft::verify_weft1_normal_form(cfg, 100, 20); });
  run(5, "support-component pipeline vs oracle (k <= 3) + inclusion-exclusion",
      [&] { return weft::verify_spc_ba(cfg, 100); });
  run(6, "restriction-product telescoping incl. zero cases, 100 polynomials",
      [&] { return weft::verify_moebius(cfg, 100); });
  run(7, "binomial-weighted support sums vs direct sums, 100 polynomials",
      [&] { return weft::verify_weighted_spc(cfg, 100); });
  run(8, "vertex-cover circuits termwise on all graphs <= 5 vertices, size bound",
      [&] { return weft::verify_vertex_cover(cfg); });
  run(9, "clique bounded-sum and homogeneous-extraction identities",
      [&] { return weft::verify_clique_identities(cfg); });
  run(10, "division elimination on 20 constructed circuits, 20 points each",
      [&] { return weft::verify_division_elimination(cfg, 20, 20); });
  run(11, "cycle-cover equivalence corpus + coupling identity (m in {1,2,3}), under 60 s",
      [&] {
        weft::SuiteResult a = weft::verify_cycle_cover(cfg);
        weft::SuiteResult b = weft::verify_coupling(cfg);
        weft::SuiteResult joint{"cycle-cover+coupling"};
        joint.pass = a.pass && b.pass;
        joint.lines = a.lines;
        joint.lines.insert(joint.lines.end(), b.lines.begin(), b.lines.end());
        return joint;
      },
      60.0);
  run(12, "grid / colored-matching / bipartite-permanent reduction chain",
      [&] { return weft::verify_reduction_chain(cfg, 50); });

  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
