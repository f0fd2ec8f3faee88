#include "bcn/io.hpp"

#include <fstream>
#include <sstream>

#include "bcn/dsl.hpp"

namespace bcn::io {

json to_json(const LogicalMatrix& m) {
  return json{{"rows", m.rows()},
              {"cols", m.cols()},
              {"col_index", std::vector<Index>(m.col_index().begin(),
                                               m.col_index().end())}};
}

LogicalMatrix matrix_from_json(const json& doc) {
  const Index rows = doc.at("rows").get<Index>();
  auto cols = doc.at("col_index").get<std::vector<Index>>();
  if (doc.at("cols").get<Index>() != static_cast<Index>(cols.size())) {
    throw DomainError("matrix document: cols does not match col_index length");
  }
  return {rows, std::move(cols)};
}

json to_json(const StateSpace& space) {
  json vars = json::array();
  for (const VariableSpec& v : space.variables()) {
    vars.push_back({{"name", v.name}, {"values", v.values}});
  }
  return json{{"variables", std::move(vars)}};
}

StateSpace space_from_json(const json& doc) {
  std::vector<VariableSpec> vars;
  for (const json& v : doc.at("variables")) {
    vars.push_back({v.at("name").get<std::string>(),
                    v.at("values").get<std::vector<std::string>>()});
  }
  return StateSpace(std::move(vars));
}

json to_json(const Bcn& net) {
  return json{{"kind", "bcn"},
              {"name", net.name},
              {"input_space", to_json(net.input_space)},
              {"state_space", to_json(net.state_space)},
              {"output_space", to_json(net.output_space)},
              {"transition", to_json(net.transition)},
              {"output_map", to_json(net.output_map)},
              {"output_depends_on_input", net.output_depends_on_input}};
}

Bcn bcn_from_json(const json& doc) {
  return make_bcn(doc.at("name").get<std::string>(),
                  space_from_json(doc.at("input_space")),
                  space_from_json(doc.at("state_space")),
                  space_from_json(doc.at("output_space")),
                  matrix_from_json(doc.at("transition")),
                  matrix_from_json(doc.at("output_map")),
                  doc.at("output_depends_on_input").get<bool>());
}

json to_json(const Bn& net) {
  json doc{{"kind", "bn"},
           {"name", net.name},
           {"state_space", to_json(net.state_space)},
           {"transition", to_json(net.transition)}};
  if (net.output_map) {
    doc["output_map"] = to_json(*net.output_map);
  }
  return doc;
}

Bn bn_from_json(const json& doc) {
  std::optional<LogicalMatrix> output;
  if (doc.contains("output_map")) {
    output = matrix_from_json(doc.at("output_map"));
  }
  return make_bn(doc.at("name").get<std::string>(),
                 space_from_json(doc.at("state_space")),
                 matrix_from_json(doc.at("transition")), std::move(output));
}

json to_json(const ClosedLoop& loop) {
  json doc = to_json(loop.as_bn());
  doc["provenance"] = {{"context", loop.context.name},
                       {"plant", loop.plant.name}};
  return doc;
}

json to_json(const AttractorReport& report) {
  json doc{{"is_global_attractor", report.is_global_attractor}};
  if (report.horizon) doc["horizon"] = *report.horizon;
  if (report.violating_cycle) doc["violating_cycle"] = *report.violating_cycle;
  return doc;
}

json to_json(const ReconstructibilityReport& report) {
  json doc{{"reconstructible", report.reconstructible}};
  if (report.horizon) doc["horizon"] = *report.horizon;
  if (report.witness) {
    doc["witness"] = {
        {"states", {report.witness->states.first, report.witness->states.second}},
        {"input_cycle", report.witness->input_cycle}};
  }
  return doc;
}

std::string digest(const json& doc) {
  const std::string text = doc.dump();
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (const unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex << hash;
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DomainError("cannot open file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DomainError("cannot write file: " + path);
  }
  out << contents;
}

AnyModel load_model(const std::string& path, int threads) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".bcn") {
    return dsl::compile(dsl::parse(read_file(path)), threads);
  }
  const json doc = json::parse(read_file(path));
  const std::string kind =
      doc.contains("kind") ? doc.at("kind").get<std::string>()
      : doc.contains("input_space") ? "bcn"
                                    : "bn";
  if (kind == "bcn") return bcn_from_json(doc);
  return bn_from_json(doc);
}

}  // namespace bcn::io
