#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

#include "conemetric/cli.hpp"

using namespace conemetric;

int main(int argc, char** argv) {
  CLI::App app{"Admissibility, reduction, holonomy realization and construction plans for spherical cone metrics"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::Options opt;
  std::string unit, format = "json";
  bool use_float = false;
  app.add_option("--tolerance", opt.tolerance, "Boundary band for float inputs")->capture_default_str();
  app.add_option("--seed", opt.seed, "Seed for the geodesic realizer")->capture_default_str();
  app.add_option("--unit", unit, "Unit of the input angles")->check(CLI::IsMember({"pi", "two_pi"}));
  app.add_flag_callback("--json", [&] { format = "json"; }, "Compact JSON output (default)");
  app.add_flag_callback("--pretty", [&] { format = "pretty"; }, "Indented output; plans as a tree");
  app.add_flag("--float", use_float, "Read bare numbers as doubles instead of exact decimals");
  app.add_option("--stop-at", opt.stop_at, "reduce: stop at 3 or 4 points")->capture_default_str();
  app.add_option("--cube", opt.cube, "cover: one_big | two_big | one_huge (default: all)");
  app.add_option("--group", opt.group, "cover: s4 | d8")->capture_default_str();

  std::map<std::string, std::string> inputs;
  std::string second;
  const std::map<std::string, std::string> help{
      {"check", "Classify an angle vector (units of 2*pi)"},
      {"reduce", "Merge down to a three- or four-point base"},
      {"realize", "Closed broken geodesic and standard SU(2) matrices"},
      {"plan", "Construction plan with validation"},
      {"cover", "Coverage of four polygon angles (units of pi) by half cubes"},
      {"path", "Interior path between two strictly admissible vectors"}};
  for (const auto& name : cli::commands()) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("angles", inputs[name], "JSON array, e.g. '[\"1/2\", 0.5, 0.5]'")->required();
    if (name == "path") sub->add_option("to", second, "Second JSON array")->required();
  }
  app.add_subcommand("batch", "Read one JSON request per line from stdin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (!unit.empty()) opt.unit = unit == "pi" ? AngleUnit::Pi : AngleUnit::TwoPi;
  opt.pretty = format == "pretty";
  opt.exact = !use_float;

  const std::string command = app.get_subcommands().front()->get_name();
  if (command == "batch") return cli::run_batch(std::cin, std::cout, opt);

  std::string text = inputs[command];
  if (command == "path") text = "[" + text + "," + second + "]";
  auto r = cli::run_text(command, text, opt);
  if (!r.text.empty())
    std::cout << r.text;
  else
    std::cout << r.body.dump(opt.pretty ? 2 : -1) << "\n";
  if (r.exit_code != 0 && r.body.contains("error"))
    std::cerr << "error: " << r.body["error"]["message"].get<std::string>() << "\n";
  return r.exit_code;
}
