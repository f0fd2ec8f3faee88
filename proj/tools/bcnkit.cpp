// bcnkit: batch verification front end for multi-valued control networks.
//
// Exit codes: 0 success / property holds, 1 property fails, 2 usage error,
// 3 invalid model or malformed input file.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bcn/analysis.hpp"
#include "bcn/casestudy.hpp"
#include "bcn/io.hpp"
#include "bcn/parallel.hpp"

namespace {

using namespace bcn;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvalidModel = 3;

struct Globals {
  bool json = false;
  int threads = 0;
  std::uint64_t seed = 0;  // reserved for randomized tooling
};

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

/// Emits the run report: canonical single-line JSON in --json mode, an
/// indented human-readable block otherwise. The timing field is appended
/// last so that json reports are byte-stable up to it.
void emit(const Globals& g, io::json report, const Timer& timer) {
  report["timing_ms"] = timer.ms();
  if (g.json) {
    std::cout << report.dump() << "\n";
  } else {
    std::cout << report.dump(2) << "\n";
  }
}

io::json command_echo(const std::string& name,
                      std::initializer_list<std::pair<std::string, std::string>>
                          args) {
  io::json echo;
  echo["command"] = name;
  for (const auto& [k, v] : args) echo[k] = v;
  return echo;
}

Bn as_autonomous(io::AnyModel model) {
  if (std::holds_alternative<Bn>(model)) return std::get<Bn>(std::move(model));
  return to_bn(std::get<Bcn>(model));
}

Bcn as_controlled(io::AnyModel model, const std::string& path) {
  if (std::holds_alternative<Bcn>(model)) {
    return std::get<Bcn>(std::move(model));
  }
  throw DomainError("model '" + path + "' is autonomous; a control network "
                    "with inputs and outputs is required here");
}

/// "var=value,var=value" (all variables) or a bare 1-based canonical index.
CanonicalVector parse_assignment(const StateSpace& space,
                                 const std::string& text) {
  if (!text.empty() &&
      text.find_first_not_of("0123456789") == std::string::npos) {
    return {space.dim(), std::stoll(text)};
  }
  std::vector<std::string> labels(space.variables().size());
  std::vector<bool> given(space.variables().size(), false);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw DomainError("assignment item '" + item +
                        "' is not of the form var=value");
    }
    auto trim = [](std::string s) {
      const auto from = s.find_first_not_of(" \t");
      const auto to = s.find_last_not_of(" \t");
      return from == std::string::npos ? std::string()
                                       : s.substr(from, to - from + 1);
    };
    const std::string var = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    const std::size_t pos = space.variable_position(var);
    if (given[pos]) throw DomainError("variable '" + var + "' assigned twice");
    labels[pos] = value;
    given[pos] = true;
  }
  for (std::size_t i = 0; i < given.size(); ++i) {
    if (!given[i]) {
      throw DomainError("assignment misses variable '" +
                        space.variables()[i].name + "'");
    }
  }
  return space.encode(labels);
}

/// Inputs as a semicolon-separated inline list, or @file with one
/// assignment per line.
std::vector<CanonicalVector> parse_inputs(const StateSpace& space,
                                          const std::string& text) {
  std::vector<std::string> items;
  if (!text.empty() && text[0] == '@') {
    std::stringstream ss(io::read_file(text.substr(1)));
    std::string line;
    while (std::getline(ss, line)) {
      if (!line.empty()) items.push_back(line);
    }
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
      if (!item.empty()) items.push_back(item);
    }
  }
  std::vector<CanonicalVector> inputs;
  for (const auto& item : items) inputs.push_back(parse_assignment(space, item));
  return inputs;
}

io::json labels_of(const StateSpace& space, Index state) {
  io::json out = io::json::array();
  for (const auto& label : space.decode({space.dim(), state})) out.push_back(label);
  return out;
}

int cmd_validate(const Globals& g, const std::string& path) {
  Timer timer;
  const auto ast = dsl::parse(io::read_file(path));
  io::json report = command_echo("validate", {{"file", path}});
  report["model"] = ast.name;
  report["valid"] = true;
  emit(g, std::move(report), timer);
  return kExitHolds;
}

int cmd_compile(const Globals& g, const std::string& path,
                const std::string& out) {
  Timer timer;
  const Bcn net = dsl::compile(dsl::parse(io::read_file(path)), g.threads);
  const io::json doc = io::to_json(net);
  io::write_file(out, doc.dump(2) + "\n");
  io::json report = command_echo("compile", {{"file", path}, {"out", out}});
  report["model"] = net.name;
  report["digest"] = io::digest(doc);
  report["state_dim"] = net.state_space.dim();
  report["input_dim"] = net.input_space.dim();
  report["output_dim"] = net.output_space.dim();
  emit(g, std::move(report), timer);
  return kExitHolds;
}

int cmd_simulate(const Globals& g, const std::string& path,
                 const std::string& init, const std::string& inputs_text,
                 Index steps) {
  Timer timer;
  auto model = io::load_model(path, g.threads);
  io::json report = command_echo("simulate", {{"model", path}});
  report["digest"] = io::digest(std::holds_alternative<Bcn>(model)
                                    ? io::to_json(std::get<Bcn>(model))
                                    : io::to_json(std::get<Bn>(model)));
  Trajectory traj;
  const StateSpace* state_space = nullptr;
  const StateSpace* output_space = nullptr;
  if (std::holds_alternative<Bcn>(model)) {
    const Bcn& net = std::get<Bcn>(model);
    state_space = &net.state_space;
    output_space = &net.output_space;
    const auto x0 = parse_assignment(net.state_space, init);
    const auto inputs = parse_inputs(net.input_space, inputs_text);
    const Index horizon =
        steps >= 0 ? steps : static_cast<Index>(inputs.size());
    traj = simulate(net, x0, inputs, horizon);
    io::json in_list = io::json::array();
    for (const auto& u : traj.inputs) {
      in_list.push_back(labels_of(net.input_space, u.index));
    }
    report["inputs"] = std::move(in_list);
  } else {
    const Bn& net = std::get<Bn>(model);
    state_space = &net.state_space;
    const auto x0 = parse_assignment(net.state_space, init);
    const Index horizon = steps >= 0 ? steps : 10;
    traj = simulate(net, x0, horizon);
  }
  io::json states = io::json::array();
  for (const auto& x : traj.states) {
    states.push_back(labels_of(*state_space, x.index));
  }
  report["states"] = std::move(states);
  if (output_space != nullptr && !traj.outputs.empty()) {
    io::json outs = io::json::array();
    for (const auto& y : traj.outputs) {
      outs.push_back(labels_of(*output_space, y.index));
    }
    report["outputs"] = std::move(outs);
  }
  emit(g, std::move(report), timer);
  return kExitHolds;
}

int cmd_compose(const Globals& g, const std::string& context_path,
                const std::string& plant_path, const std::string& out) {
  Timer timer;
  const Bcn context =
      as_controlled(io::load_model(context_path, g.threads), context_path);
  const Bcn plant =
      as_controlled(io::load_model(plant_path, g.threads), plant_path);
  const ClosedLoop loop = compose(context, plant, g.threads);
  const io::json doc = io::to_json(loop);
  io::write_file(out, doc.dump() + "\n");
  io::json report = command_echo(
      "compose", {{"context", context_path}, {"plant", plant_path},
                  {"out", out}});
  report["digest"] = io::digest(doc);
  report["combined_dim"] = loop.combined_space.dim();
  emit(g, std::move(report), timer);
  return kExitHolds;
}

int cmd_analyze(const Globals& g, const std::string& what,
                const std::string& path, const std::string& set_text) {
  Timer timer;
  const Bn net = as_autonomous(io::load_model(path, g.threads));
  io::json report =
      command_echo("analyze " + what, {{"model", path}});
  report["digest"] = io::digest(io::to_json(net));
  int exit_code = kExitHolds;
  if (what == "fixpoints") {
    const auto fp = fixed_points(net);
    report["fixed_points"] = fp.indices();
    report["count"] = fp.size();
  } else if (what == "cycles") {
    const auto cycles = limit_cycles(net);
    report["cycles"] = cycles;
    report["count"] = cycles.size();
  } else {
    if (set_text.empty()) {
      throw CLI::ValidationError("analyze attractor requires --set");
    }
    const SetExpr predicate = SetExpr::parse(set_text);
    predicate.validate(net.state_space);
    const StateSet target = state_set(net.state_space, predicate);
    const auto result = is_global_attractor(net, target);
    report["set"] = set_text;
    report["set_size"] = target.size();
    report["verdict"] = io::to_json(result);
    exit_code = result.is_global_attractor ? kExitHolds : kExitFails;
  }
  emit(g, std::move(report), timer);
  return exit_code;
}

int cmd_reconstruct(const Globals& g, const std::string& path, bool reduce) {
  Timer timer;
  Bcn net = as_controlled(io::load_model(path, g.threads), path);
  io::json report = command_echo("reconstruct", {{"model", path}});
  report["digest"] = io::digest(io::to_json(net));
  if (reduce) {
    net = reduce_plant(net);
    report["reduced_input_dim"] = net.input_space.dim();
  }
  const auto result = reconstructibility(net);
  report["verdict"] = io::to_json(result);
  emit(g, std::move(report), timer);
  return result.reconstructible ? kExitHolds : kExitFails;
}

int cmd_casestudy_verify(const Globals& g) {
  Timer timer;
  const auto cs = casestudy::load_case_study(g.threads);
  const ClosedLoop loop = compose(cs.context, cs.plant, g.threads);
  const auto cd = verify_correct_diagnosis(loop, cs.diagnosis);
  const auto therapy = verify_successful_therapy(loop, cs.diagnosis);

  io::json report = command_echo("casestudy verify", {});
  report["context_digest"] = io::digest(io::to_json(cs.context));
  report["plant_digest"] = io::digest(io::to_json(cs.plant));
  report["combined_dim"] = loop.combined_space.dim();
  report["correct_diagnosis"] = io::to_json(cd);
  report["successful_therapy"] = io::to_json(therapy);
  report["assumptions"] = cs.assumptions;
  emit(g, std::move(report), timer);
  return cd.is_global_attractor && therapy.is_global_attractor ? kExitHolds
                                                               : kExitFails;
}

int cmd_export_dot(const Globals& g, const std::string& path, bool labels) {
  constexpr Index kDotLimit = 10000;
  const Bn net = as_autonomous(io::load_model(path, g.threads));
  const Index n = net.state_space.dim();
  if (n > kDotLimit) {
    std::cerr << "error: dot export supports up to " << kDotLimit
              << " states, model has " << n << "\n";
    return kExitUsage;
  }
  (void)g;
  std::ostringstream out;
  out << "digraph \"" << net.name << "\" {\n";
  for (Index v = 1; v <= n; ++v) {
    if (labels) {
      out << "  n" << v << " [label=\"" << v << ":";
      const auto decoded = net.state_space.decode({n, v});
      for (std::size_t i = 0; i < decoded.size(); ++i) {
        out << (i == 0 ? "" : ",") << decoded[i];
      }
      out << "\"];\n";
    }
    out << "  n" << v << " -> n" << net.transition.col(v) << ";\n";
  }
  out << "}\n";
  std::cout << out.str();
  return kExitHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for multi-valued control networks"};
  app.require_subcommand(1);

  Globals globals;
  app.add_flag("--json", globals.json, "machine-readable single-line report");
  app.add_option("--threads", globals.threads,
                 "worker threads (default: available cores)");
  app.add_option("--seed", globals.seed, "seed for randomized tooling");

  std::function<int()> action;

  // validate
  {
    auto* sub = app.add_subcommand("validate", "parse and check a .bcn model");
    auto file = std::make_shared<std::string>();
    sub->add_option("file", *file, "model source")->required();
    sub->callback([&, file] {
      action = [&, file] { return cmd_validate(globals, *file); };
    });
  }
  // compile
  {
    auto* sub = app.add_subcommand("compile", "compile a .bcn model to JSON");
    auto file = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    sub->add_option("file", *file, "model source")->required();
    sub->add_option("-o,--out", *out, "output path")->required();
    sub->callback([&, file, out] {
      action = [&, file, out] { return cmd_compile(globals, *file, *out); };
    });
  }
  // simulate
  {
    auto* sub = app.add_subcommand("simulate", "run a trajectory");
    auto model = std::make_shared<std::string>();
    auto init = std::make_shared<std::string>();
    auto inputs = std::make_shared<std::string>();
    auto steps = std::make_shared<Index>(-1);
    sub->add_option("--model", *model, "model file")->required();
    sub->add_option("--init", *init,
                    "initial state: var=value,... or canonical index")
        ->required();
    sub->add_option("--inputs", *inputs,
                    "inline a;b;c or @file, one assignment per line");
    sub->add_option("--steps", *steps, "horizon (default: number of inputs)");
    sub->callback([&, model, init, inputs, steps] {
      action = [&, model, init, inputs, steps] {
        return cmd_simulate(globals, *model, *init, *inputs, *steps);
      };
    });
  }
  // compose
  {
    auto* sub = app.add_subcommand("compose", "feedback interconnection");
    auto context = std::make_shared<std::string>();
    auto plant = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    sub->add_option("--context", *context, "context model")->required();
    sub->add_option("--plant", *plant, "plant model")->required();
    sub->add_option("-o,--out", *out, "output path")->required();
    sub->callback([&, context, plant, out] {
      action = [&, context, plant, out] {
        return cmd_compose(globals, *context, *plant, *out);
      };
    });
  }
  // analyze
  {
    auto* sub = app.add_subcommand("analyze", "attractor-structure analysis");
    for (const std::string what : {"fixpoints", "cycles", "attractor"}) {
      auto* inner = sub->add_subcommand(what);
      auto model = std::make_shared<std::string>();
      auto set_text = std::make_shared<std::string>();
      inner->add_option("--model", *model, "model file")->required();
      if (what == "attractor") {
        inner->add_option("--set", *set_text, "target set predicate")
            ->required();
      }
      inner->callback([&, what, model, set_text] {
        action = [&, what, model, set_text] {
          return cmd_analyze(globals, what, *model, *set_text);
        };
      });
    }
    sub->require_subcommand(1);
  }
  // reconstruct
  {
    auto* sub = app.add_subcommand("reconstruct", "reconstructibility check");
    auto model = std::make_shared<std::string>();
    auto reduce = std::make_shared<bool>(false);
    sub->add_option("--model", *model, "model file")->required();
    sub->add_flag("--reduce-plant", *reduce,
                  "substitute the self-feedback u = H s first");
    sub->callback([&, model, reduce] {
      action = [&, model, reduce] {
        return cmd_reconstruct(globals, *model, *reduce);
      };
    });
  }
  // casestudy
  {
    auto* sub = app.add_subcommand("casestudy", "bundled healthcare study");
    auto* verify = sub->add_subcommand("verify", "run both attractor checks");
    verify->callback([&] { action = [&] { return cmd_casestudy_verify(globals); }; });
    sub->require_subcommand(1);
  }
  // export
  {
    auto* sub = app.add_subcommand("export", "exporters");
    auto* dot = sub->add_subcommand("dot", "functional graph in DOT format");
    auto model = std::make_shared<std::string>();
    auto labels = std::make_shared<bool>(false);
    dot->add_option("--model", *model, "model file")->required();
    dot->add_flag("--labels", *labels, "decode states into variable labels");
    dot->callback([&, model, labels] {
      action = [&, model, labels] {
        return cmd_export_dot(globals, *model, *labels);
      };
    });
    sub->require_subcommand(1);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (globals.threads > 0) set_default_threads(globals.threads);

  try {
    return action();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << " (line " << e.line() << ", column "
              << e.column() << ")\n";
    return kExitInvalidModel;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidModel;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidModel;
  }
}
