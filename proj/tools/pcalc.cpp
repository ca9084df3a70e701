// Command line front end: runs one JSON task file and prints its report.
//
// Exit codes: 0 success, 2 schema error, 3 mathematical precondition
// violated, 4 tuple budget exceeded.

#include <fstream>
#include <iostream>
#include <iterator>

#include "CLI11.hpp"
#include "json.hpp"
#include "pc/errors.hpp"
#include "pc/task.hpp"

namespace {

void emit(const nlohmann::json& report, const std::string& format) {
  if (format == "text")
    std::cout << pc::task::to_text(report);
  else
    std::cout << report.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact pseudocharacter, GMA, nilpotent and refinement computations"};
  std::string task_path;
  std::string format = "json";
  pc::task::RunOptions opt;
  bool check_only = false;
  app.add_option("--task", task_path, "task file, or - for stdin")->required();
  app.add_option("--seed", opt.seed, "seed for randomized checks");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--tuple-budget", opt.tuple_budget, "largest number of tuples a verification may visit");
  app.add_flag("--validate", check_only, "only print schema diagnostics");
  CLI11_PARSE(app, argc, argv);

  std::string raw;
  if (task_path == "-") {
    raw.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(task_path);
    if (!in) {
      emit(pc::task::error_report("schema", "cannot read " + task_path), format);
      return 2;
    }
    raw.assign(std::istreambuf_iterator<char>(in), {});
  }

  nlohmann::json task;
  try {
    task = nlohmann::json::parse(raw);
  } catch (const nlohmann::json::parse_error& e) {
    emit(pc::task::error_report("schema", e.what()), format);
    return 2;
  }

  auto diags = pc::task::validate(task);
  if (check_only || !diags.empty()) {
    nlohmann::json out = {{"diagnostics", diags}, {"report_version", pc::task::kVersion}};
    emit(out, format);
    return diags.empty() ? 0 : 2;
  }

  try {
    emit(pc::task::run(task, opt), format);
    return 0;
  } catch (const pc::SchemaError& e) {
    emit(pc::task::error_report("schema", e.what()), format);
    return 2;
  } catch (const pc::MathError& e) {
    emit(pc::task::error_report("math", e.what(), e.witness()), format);
    return 3;
  } catch (const pc::BudgetError& e) {
    emit(pc::task::error_report("budget", e.what()), format);
    return 4;
  } catch (const nlohmann::json::exception& e) {
    emit(pc::task::error_report("schema", e.what()), format);
    return 2;
  }
}
