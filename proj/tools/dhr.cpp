#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dhr/error.hpp"
#include "dhr/report.hpp"

using namespace dhr;

namespace {

struct Target {
  std::string family;
  int n = 0;
};

void add_target(CLI::App *cmd, Target &t) {
  cmd->add_option("--family,-f", t.family, "preset key (quintic, 8, table1:8, X(2,2,2,2)) or family file");
  cmd->add_option("--n", t.n, "order parameter for the generic operator")->check(CLI::Range(1, 9));
}

void need_target(const Target &t) {
  if (t.family.empty() == (t.n == 0)) throw Error("give exactly one of --family and --n");
}

void emit(const std::string &text, const std::string &path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

State parse_state(const std::string &text) {
  State x;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = std::stod(item, &used);
    if (used != item.size() && item.find_first_not_of(" ", used) != std::string::npos)
      throw Error("bad number '" + item + "' in --init");
    x.push_back(v);
  }
  return x;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Darboux-Halphen-Ramanujan vector fields from self-dual Picard-Fuchs operators"};
  app.require_subcommand(1);
  bool strict = false;
  app.add_flag("--strict", strict, "exit with status 2 when a verification verdict fails");

  Target derive_t;
  std::string derive_out = "json", derive_file;
  bool derive_reduced = false;
  auto *derive = app.add_subcommand("derive", "emit the vector field");
  add_target(derive, derive_t);
  derive->add_option("--out", derive_out, "json, math or both")->check(CLI::IsMember({"json", "math", "both"}));
  derive->add_flag("--reduced", derive_reduced, "math rendering with the self-duality relations substituted");
  derive->add_option("-o,--output", derive_file, "output file");

  Target sd_t;
  auto *selfdual = app.add_subcommand("selfdual", "self-duality residuals");
  add_target(selfdual, sd_t);
  bool sd_formulas = false;
  selfdual->add_flag("--formulas", sd_formulas, "print the dependent-coefficient formulas (generic n)");

  Target om_t;
  std::string fill = "full";
  auto *inter = app.add_subcommand("intersection", "intersection matrix of the frame");
  add_target(inter, om_t);
  inter->add_option("--fill", fill, "full or upper")->check(CLI::IsMember({"full", "upper"}));

  std::string suite;
  int order = 40;
  auto *verify = app.add_subcommand("verify", "series identities");
  verify->add_option("--suite", suite, "ramanujan, darboux-halphen, darboux-halphen-sum, pushforward, halphen-specialization")
      ->required()
      ->check(CLI::IsMember({"ramanujan", "darboux-halphen", "darboux-halphen-sum", "pushforward", "halphen-specialization"}));
  verify->add_option("--order", order, "truncation order (q for ramanujan, q^(1/8) otherwise)")->check(CLI::Range(1, 2000));

  std::string int_family, int_system, init, csv;
  double from = 0, to = 1, step = 1e-3, guard = 1e-12;
  bool doubling = false;
  auto *integ = app.add_subcommand("integrate", "RK4 run of a field");
  integ->add_option("--family,-f", int_family, "family whose field to integrate (n odd)");
  integ->add_option("--system", int_system, "darboux-halphen, darboux-halphen-sum, ramanujan or ramanujan-normalized")
      ->check(CLI::IsMember({"darboux-halphen", "darboux-halphen-sum", "ramanujan", "ramanujan-normalized"}));
  integ->add_option("--from", from, "start time")->required();
  integ->add_option("--to", to, "end time")->required();
  integ->add_option("--step", step, "step size")->check(CLI::PositiveNumber);
  integ->add_option("--init", init, "comma separated initial state")->required();
  integ->add_option("--csv", csv, "trajectory CSV path (- for stdout)");
  integ->add_option("--guard", guard, "singularity proximity threshold");
  integ->add_flag("--step-doubling", doubling, "estimate the local error by step doubling");

  std::string report_file;
  bool timings = false;
  int report_order = 40;
  auto *report = app.add_subcommand("report", "full pipeline over all presets");
  report->add_option("-o,--output", report_file, "output file");
  report->add_flag("--timings", timings, "include wall-clock timings (output no longer reproducible)");
  report->add_option("--order", report_order, "series order for the suites")->check(CLI::Range(1, 2000));

  bool write = false;
  auto *goldens = app.add_subcommand("goldens", "check or rewrite the golden files");
  goldens->add_flag("--write", write, "rewrite instead of checking");

  CLI11_PARSE(app, argc, argv);

  bool verdict_failed = false;
  try {
    if (derive->parsed()) {
      need_target(derive_t);
      ODESystem sys = derive_t.family.empty() ? derive_vector_field(derive_t.n)
                                              : derive_vector_field(load_family(derive_t.family));
      std::string text;
      if (derive_out != "math") text += to_json(sys).dump(2) + "\n";
      if (derive_out != "json") text += render_math(sys, derive_reduced);
      emit(text, derive_file);
    } else if (selfdual->parsed()) {
      need_target(sd_t);
      Json j;
      if (!sd_t.family.empty()) {
        FamilySpec f = load_family(sd_t.family);
        Json res = Json::array();
        bool ok = true;
        for (auto &r : self_duality_residuals(f.op())) {
          ok = ok && r.value.is_zero();
          res.push_back({{"index", r.index}, {"value", r.value.to_string()}});
        }
        j = {{"family", f.name}, {"n", f.n}, {"self_dual", ok}, {"residuals", res}};
        verdict_failed = !ok;
      } else {
        Json res = Json::array();
        for (auto &r : self_duality_residuals(generic_op(sd_t.n)))
          res.push_back({{"index", r.index}, {"value", r.value.to_string()}});
        j = {{"n", sd_t.n}, {"residuals", res}};
        if (sd_formulas) {
          Json fs;
          for (auto &[i, e] : dependent_coefficient_formulas(sd_t.n, Convention::PicardFuchs)) fs["a" + std::to_string(i)] = e.to_string();
          j["formulas"] = fs;
        }
      }
      std::cout << j.dump(2) << "\n";
    } else if (inter->parsed()) {
      need_target(om_t);
      IntersectionMatrix omega = om_t.family.empty()
                                     ? intersection_matrix(generic_op(om_t.n), fill == "full" ? OmegaFill::Full : OmegaFill::UpperFill)
                                     : intersection_matrix(load_family(om_t.family).op());
      std::cout << to_json(omega).dump(2) << "\n";
    } else if (verify->parsed()) {
      auto r = run_suite(suite, order);
      verdict_failed = !r.passed;
      std::cout << r.document.dump(2) << "\n";
    } else if (integ->parsed()) {
      if (int_family.empty() == int_system.empty()) throw Error("give exactly one of --family and --system");
      NumField f;
      if (!int_family.empty()) f = numeric_field(derive_vector_field(load_family(int_family)));
      else if (int_system == "darboux-halphen") f = numeric_field(darboux_halphen_field());
      else if (int_system == "darboux-halphen-sum") f = numeric_field(darboux_halphen_solved());
      else if (int_system == "ramanujan") f = numeric_field(ramanujan_field());
      else f = numeric_field(ramanujan_normalized_field());
      RK4Options opt;
      opt.guard_threshold = guard;
      opt.step_doubling = doubling;
      Trajectory tr = integrate_rk4(f, parse_state(init), from, to, step, opt);
      if (!csv.empty()) {
        std::ostringstream os;
        write_csv(os, tr);
        emit(os.str(), csv);
      }
      if (csv != "-") {
        Json j = {{"steps", tr.times.size() - 1}, {"step", tr.step}, {"final", tr.final_state()}};
        if (doubling) j["max_error_estimate"] = tr.max_error_estimate;
        std::cout << j.dump(2) << "\n";
      }
    } else if (report->parsed()) {
      ReportOptions opt;
      opt.timings = timings;
      opt.series_order = report_order;
      ReportResult r = build_report(opt);
      emit(r.document.dump(2) + "\n", report_file);
      if (r.hard_errors) return 1;
      verdict_failed = r.verdict_failures > 0;
    } else if (goldens->parsed()) {
      Json j = Json::array();
      for (auto &[name, text] : golden_texts()) {
        if (write) {
          write_golden(name, text);
          j.push_back({{"file", name}, {"status", "written"}});
        } else {
          auto g = check_golden(name, text);
          verdict_failed = verdict_failed || g.status != "match";
          j.push_back({{"file", name}, {"status", g.status}, {"first_difference", g.first_difference}});
        }
      }
      std::cout << j.dump(2) << "\n";
    }
  } catch (const StageError &e) {
    std::cerr << "error [" << e.stage() << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return verdict_failed && strict ? 2 : 0;
}
