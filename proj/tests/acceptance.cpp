// Acceptance gate: one pass/fail line per criterion, wall-clock budgets enforced.
// Criteria 1-6 drive the library entry point on the shipped scenarios; criterion 7
// drives the installed CLI binary end to end; criterion 8 replays everything with
// the same seed and demands byte-identical output.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "frobcat/scenario.hpp"

using namespace frobcat;

namespace {

std::string scenario_path(const char* file) {
  return std::string(FROBCAT_SCENARIO_DIR) + "/" + file;
}

struct CliRun {
  int exit_code = -1;
  std::string output;
};

CliRun run_cli(const std::string& args) {
  CliRun r;
  std::string cmd = std::string(FROBCAT_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  int status = pclose(pipe);
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  return r;
}

RunResult run_lib(const char* file, const char* command) {
  auto sc = load_scenario_file(scenario_path(file));
  return run_command(sc, command, -1, SearchBudget{0, 0});
}

// A replayable action whose rendered bytes must be stable across reruns.
struct Replay {
  std::string label;
  std::function<std::string()> produce;
  std::string first;
};

std::vector<Replay> replays;

std::string lib_bytes(const char* file, const char* command) {
  auto rr = run_lib(file, command);
  return render_report_json(rr.report) + "\nexit=" + std::to_string(rr.exit_code) + "\n";
}

RunResult remember_lib(const char* file, const char* command) {
  auto rr = run_lib(file, command);
  std::string f = file, c = command;
  replays.push_back({f + ":" + c, [f, c] { return lib_bytes(f.c_str(), c.c_str()); },
                     render_report_json(rr.report) + "\nexit=" + std::to_string(rr.exit_code) +
                         "\n"});
  return rr;
}

CliRun remember_cli(const std::string& args) {
  auto r = run_cli(args);
  replays.push_back({"cli:" + args, [args] {
                       auto rr = run_cli(args);
                       return rr.output + "\nexit=" + std::to_string(rr.exit_code) + "\n";
                     },
                     r.output + "\nexit=" + std::to_string(r.exit_code) + "\n"});
  return r;
}

bool entry_yes(const Report& rep, const std::string& check, std::string& why) {
  const auto* e = rep.find(check);
  if (!e) {
    why = "missing entry '" + check + "'";
    return false;
  }
  if (e->status != Tri::yes) {
    why = "entry '" + check + "' is " + std::string(tri_name(e->status)) +
          (e->counterexample.empty() ? "" : ": " + e->counterexample);
    return false;
  }
  return true;
}

bool report_green(const RunResult& rr, std::string& why) {
  if (rr.exit_code != 0) {
    why = "exit code " + std::to_string(rr.exit_code);
    for (const auto& e : rr.report.entries)
      if (e.status != Tri::yes) {
        why += "; first failing entry '" + e.check + "'";
        break;
      }
    return false;
  }
  if (!rr.report.passed()) {
    why = "report not fully green despite exit 0";
    return false;
  }
  return true;
}

struct Criterion {
  int number = 0;
  std::string label;
  double budget_seconds = 0;
  bool ok = false;
  double seconds = 0;
  std::string why;
};

}  // namespace

int main() {
  std::vector<Criterion> results;
  auto timed = [&](int number, std::string label, double budget,
                   const std::function<bool(std::string&)>& body) {
    Criterion c;
    c.number = number;
    c.label = std::move(label);
    c.budget_seconds = budget;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.ok = body(c.why);
    } catch (const std::exception& e) {
      c.ok = false;
      c.why = e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.ok && c.seconds > c.budget_seconds) {
      c.ok = false;
      c.why = "took " + std::to_string(c.seconds) + "s, budget " +
              std::to_string(c.budget_seconds) + "s";
    }
    results.push_back(std::move(c));
  };

  timed(1, "comma ext dimensions match module-level oracles", 30, [](std::string& why) {
    auto rr = remember_lib("triangular_f2x2.json", "ext");
    if (!report_green(rr, why)) return false;
    int za = 0, tb = 0;
    for (const auto& e : rr.report.entries) {
      if (e.check.rfind("za-pattern", 0) == 0) ++za;
      if (e.check.rfind("tb-pattern", 0) == 0) ++tb;
    }
    if (za < 1 || tb < 1) {
      why = "pattern comparisons missing (za=" + std::to_string(za) +
            ", tb=" + std::to_string(tb) + ")";
      return false;
    }
    return true;
  });

  timed(2, "lifted pair passes every axiom and recovers the base classes", 120,
        [](std::string& why) {
          auto rr = remember_lib("triangular_f2x2.json", "frobenius-check");
          if (!report_green(rr, why)) return false;
          for (const char* axiom :
               {"w-inside-x", "x-extensions-closed", "x-kernels-of-epis-closed",
                "x-summands-closed", "w-summands-closed", "ext-vanishing-x-to-w",
                "w-cogenerator", "x-cap-xperp-equals-w"})
            if (!entry_yes(rr.report, std::string("pc.") + axiom, why)) return false;
          int recoveries = 0;
          for (const auto& e : rr.report.entries)
            if (e.check.rfind("pc.recovery.", 0) == 0) ++recoveries;
          if (recoveries < 16) {
            why = "expected 16 recovery comparisons, saw " + std::to_string(recoveries);
            return false;
          }
          return true;
        });

  timed(3, "recollement holds over the dual numbers with the strong upgrade", 300,
        [](std::string& why) {
          auto rr = remember_lib("triangular_f2x2.json", "recollement-verify");
          if (!report_green(rr, why)) return false;
          for (const char* label : {"a", "b", "comma"})
            if (!entry_yes(rr.report, std::string("strong.suspension-loop-") + label, why))
              return false;
          return true;
        });

  timed(4, "path-algebra recollement stays right-triangulated only", 120, [](std::string& why) {
    auto rr = remember_lib("path_a2.json", "recollement-verify");
    if (!report_green(rr, why)) return false;
    if (!entry_yes(rr.report, "strong.skipped", why)) return false;
    for (const auto& e : rr.report.entries)
      if (e.check.rfind("strong.suspension-loop", 0) == 0) {
        why = "unexpected triangulated claim '" + e.check + "'";
        return false;
      }
    return true;
  });

  timed(5, "Gorenstein projectivity transfers to the triangular matrix algebra", 120,
        [](std::string& why) {
          auto rr = remember_lib("gp_f2x2.json", "gp");
          if (!report_green(rr, why)) return false;
          if (!entry_yes(rr.report, "gorenstein-verified", why)) return false;
          return entry_yes(rr.report, "gp-transfer", why);
        });

  timed(6, "stable hom, suspension fixed point, triangle completion, class agreement", 30,
        [](std::string& why) {
          auto rr = remember_lib("triangular_f2x2.json", "stable");
          if (!report_green(rr, why)) return false;
          const auto* endk = rr.report.find("pa.hom(k,k)");
          if (!endk || endk->detail.find("stable_dim=1") == std::string::npos) {
            why = "stable End(k) is not one-dimensional";
            return false;
          }
          if (!entry_yes(rr.report, "pa.sigma-fixes(k)", why)) return false;
          const auto* tri = rr.report.find("pa.triangle(k->reg)");
          if (!tri || tri->status != Tri::yes ||
              tri->detail.find("stably invertible: yes") == std::string::npos) {
            why = "triangle completion did not produce a stably invertible connecting map";
            return false;
          }
          int agreements = 0;
          for (const auto& e : rr.report.entries)
            if (e.check.rfind("pa.w-agreement", 0) == 0) ++agreements;
          if (agreements < 3) {
            why = "expected at least 3 class-agreement comparisons";
            return false;
          }
          return true;
        });

  timed(7, "broken fixtures fail with designated entries and nonzero exit", 30,
        [](std::string& why) {
          auto w = remember_cli("frobenius-check --scenario " +
                                scenario_path("broken_w_not_summand_closed.json"));
          if (w.exit_code != 1) {
            why = "summand fixture: expected exit 1, got " + std::to_string(w.exit_code);
            return false;
          }
          if (w.output.find("pe.w-summands-closed") == std::string::npos ||
              w.output.find("\"status\": \"no\"") == std::string::npos) {
            why = "summand fixture: designated failure entry missing from report";
            return false;
          }
          auto l = remember_cli("recollement-verify --scenario " +
                                scenario_path("broken_l1t_nonzero.json"));
          if (l.exit_code != 1) {
            why = "tensor fixture: expected exit 1, got " + std::to_string(l.exit_code);
            return false;
          }
          if (l.output.find("hypotheses.derived-tensor-vanishing") == std::string::npos ||
              l.output.find("\"status\": \"no\"") == std::string::npos) {
            why = "tensor fixture: designated failure entry missing from report";
            return false;
          }
          return true;
        });

  timed(8, "seed-0 reruns replay byte-identically", 630, [](std::string& why) {
    if (replays.empty()) {
      why = "nothing to replay";
      return false;
    }
    for (const auto& r : replays)
      if (r.produce() != r.first) {
        why = "output drifted on rerun of " + r.label;
        return false;
      }
    return true;
  });

  int failed = 0;
  for (const auto& c : results) {
    if (!c.ok) ++failed;
    std::printf("[%s] criterion %d: %s (%.2fs, budget %.0fs)%s%s\n", c.ok ? "PASS" : "FAIL",
                c.number, c.label.c_str(), c.seconds, c.budget_seconds,
                c.why.empty() ? "" : " -- ", c.why.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed,
              results.size());
  return failed == 0 ? 0 : 1;
}
